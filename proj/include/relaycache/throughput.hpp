#pragma once

#include "relaycache/chain.hpp"
#include "relaycache/content.hpp"
#include "relaycache/phy.hpp"

namespace relaycache {

enum class Source { closed_form, oracle, simulated };

const char* source_tag(Source s);  // "analytic", "oracle", "simulated"

struct ThroughputReport {
    double t_direct = 0.0;        // T_1D: U1 -> D deliveries per slot
    double t_relayed = 0.0;       // T_R: packets accepted into (and served from) the relay queue
    double t_noncacheable = 0.0;  // T_D = T_1D + T_R
    double t_cacheable = 0.0;     // T_2: files delivered to U2 per slot
    double t_network = 0.0;       // T = T_D + T_2
    Source source = Source::closed_form;
};

// Each evaluates the closed-form expression verbatim against the steady state.
double t_direct(const LinkProbs& lp, const TrafficParams& t, const SteadyState& ss);
// B is taken from ss (pi has B+1 entries); B = 0 yields 0 (no queue, nothing to relay).
double t_relayed(const LinkProbs& lp, const TrafficParams& t, const SteadyState& ss);
double t_cacheable(const LinkProbs& lp, const TrafficParams& t, const SteadyState& ss);

// coefficients -> steady state -> all throughputs. Uses the closed form when
// b0 > 0, otherwise the numeric solver.
ThroughputReport report(const LinkBudget& budget, const TrafficParams& t,
                        const CacheConfig& cfg);

// report() plus the intermediate chain quantities, for CSV emission.
struct AnalyticPoint {
    ChainCoefficients co;
    SteadyState ss;
    ThroughputReport rep;
};

AnalyticPoint analytic_point(const LinkBudget& budget, const TrafficParams& t,
                             const CacheConfig& cfg);

}
