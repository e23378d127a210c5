#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "relaycache/chain.hpp"
#include "relaycache/content.hpp"
#include "relaycache/oracle.hpp"
#include "relaycache/phy.hpp"
#include "relaycache/throughput.hpp"

namespace relaycache {

struct SimConfig {
    std::uint64_t slots = 1000000;
    std::uint64_t warmup = 10000;  // slots excluded from statistics; must be < slots
    std::uint64_t seed = 1;
    SlotSemantics semantics = SlotSemantics::blocked;
    std::ostream* trace = nullptr;  // per-slot CSV when set (debugging; not serialized)

    void validate() const;
};

struct SimCounters {
    std::uint64_t delivered_direct = 0;  // U1 -> D successes
    std::uint64_t delivered_relayed = 0; // R -> D successes (queue departures)
    std::uint64_t accepted = 0;          // packets admitted to the queue
    std::uint64_t dropped_full = 0;      // offered packets rejected at a full queue
    std::uint64_t u2_served = 0;         // U2 requests delivered (R or BS)
    std::uint64_t u2_blocked = 0;        // U2 requests with no serving transmission
    std::uint64_t u1r_successes = 0;     // U1 -> R successes (offered packets)
};

struct SimResult {
    std::vector<double> empirical_pi;           // queue occupancy at slot starts
    ThroughputReport report;                    // source = simulated
    std::map<std::string, double> ci_halfwidth; // keys T_1D, T_R, T_D, T_2, T
    SimCounters counters;
    // Per-slot indicators after warmup, for batch-means CIs.
    std::vector<std::uint8_t> s_direct, s_accept, s_u2;
    // Per-state transition counts (down, stay, up) after warmup.
    std::vector<std::array<std::uint64_t, 3>> dq_counts;
    std::uint64_t slots_counted = 0;
    bool fcfs_ok = true;  // departures observed in arrival order
};

// One RNG stream (mt19937_64), fixed draw order per slot: the five coins
// c1, cR, r, hit, cDC, then one draw per active link in the order
// 1->D, 1->R, R->D, R->2, BS->2. Same seed, same config: identical result.
SimResult run(const LinkBudget& budget, const TrafficParams& t,
              const CacheConfig& cfg, const SimConfig& sim);

// 99% normal-approximation confidence half-widths from batch means over
// disjoint windows of samples_per_batch slots. Throws ModelError when the
// retained slots form fewer than 20 batches.
std::map<std::string, double> batch_means_ci(std::size_t samples_per_batch,
                                             const SimResult& result);

}
