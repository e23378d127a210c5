#pragma once

#include <string>
#include <vector>

#include "relaycache/chain.hpp"
#include "relaycache/content.hpp"
#include "relaycache/phy.hpp"
#include "relaycache/throughput.hpp"

namespace relaycache {

// What happens when U2's request hits the relay cache while the relay serves D.
// blocked: the request goes unserved that slot (matches the closed-form T_2).
// data_center: the BS serves it when available (matches the prose system rules).
enum class SlotSemantics { blocked, data_center };

const char* semantics_tag(SlotSemantics s);       // "blocked" / "data-center"
SlotSemantics parse_semantics(const std::string&); // accepts both spellings

struct SlotStateOutcome {
    double p_down = 0.0, p_stay = 0.0, p_up = 0.0;  // queue transition probabilities
    double rate_direct = 0.0;  // P(D receives from U1 this slot)
    double rate_accept = 0.0;  // P(relay accepts a new packet this slot)
    double rate_u2 = 0.0;      // P(U2 receives its requested file this slot)
    double rate_depart = 0.0;  // P(a packet leaves the queue this slot)
};

struct SlotOutcomeDistribution {
    std::vector<SlotStateOutcome> per_state;  // index q = 0..B
};

// Exact enumeration over the joint outcomes of the five slot coins
// c1~Bern(q1), cR~Bern(qR), r~Bern(qU), hit~Bern(ph), cDC~Bern(alpha) and the
// independent link successes of the resulting active set. Active transmitters:
//   U1 transmits iff c1;
//   R -> D iff cR and q > 0;
//   R -> U2 iff not (cR and q > 0), and r and hit;
//   BS -> U2 iff r and cDC and (no hit; under data_center also hit while R serves D).
// Queue: departure iff R->D succeeds; arrival iff U1's packet failed to D but
// reached R, and there is room (q < B or a departure this slot).
SlotStateOutcome enumerate_slot(const LinkProbs& lp, const TrafficParams& t,
                                SlotSemantics sem, std::size_t q, std::size_t B);

SlotOutcomeDistribution enumerate_all(const LinkProbs& lp, const TrafficParams& t,
                                      SlotSemantics sem, std::size_t B);

// Event-model coefficients: a1 from state 0, b0/b2 from an interior state
// (the full-queue arrival exception disabled). These are the exact analogues of
// the closed-form chain coefficients.
ChainCoefficients oracle_coefficients(const LinkProbs& lp, const TrafficParams& t,
                                      SlotSemantics sem);

struct OraclePoint {
    ChainCoefficients co;          // interior event-model coefficients
    SlotOutcomeDistribution dist;
    SteadyState ss;
    ThroughputReport rep;          // source = oracle
};

OraclePoint oracle_point(const LinkBudget& budget, const TrafficParams& t,
                         const CacheConfig& cfg, SlotSemantics sem);

ThroughputReport oracle_report(const LinkBudget& budget, const TrafficParams& t,
                               const CacheConfig& cfg, SlotSemantics sem);

struct DiscrepancyRow {
    std::string quantity;  // a1, b0, b2, T_1D, T_R, T_D, T_2
    double closed_form = 0.0;
    double oracle = 0.0;
    double delta = 0.0;    // oracle - closed_form
};

// Quantifies the closed-form formulas against exact enumeration under blocked
// semantics (the variant the closed forms assume).
std::vector<DiscrepancyRow> discrepancy_report(const LinkBudget& budget,
                                               const TrafficParams& t,
                                               const CacheConfig& cfg);

}
