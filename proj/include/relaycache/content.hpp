#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace relaycache {

struct CacheConfig {
    std::size_t library_size = 1;  // N
    std::size_t relay_storage = 0; // F
    std::size_t queue_size = 0;    // B, 0 <= B <= F
    std::size_t user_cache = 0;    // M_U
    double zipf_shape = 0.0;       // delta >= 0

    void validate() const;  // throws ConfigError
};

struct PopularityModel {
    std::vector<double> pmf;  // pmf[i-1] = Omega / i^delta
    double normalization = 0; // Omega
};

// p_i = Omega / i^delta with Omega = (sum_{j=1..N} j^-delta)^-1.
// The sum accumulates from j = N down to 1 (increasing magnitude) for a
// reproducible rounding pattern.
PopularityModel zipf_pmf(const CacheConfig& cfg);

// q_U = 1 - sum_{i=1..M_U} p_i: probability that U2's request misses its own cache.
double external_request_prob(const PopularityModel& pm, const CacheConfig& cfg);

// p_h = sum_{i=M_U+1 .. M_U+F-B} p_i: hit probability at the relay cache.
double relay_hit_prob(const PopularityModel& pm, const CacheConfig& cfg);

// CMPC placement: user cache holds ranks 1..M_U, relay holds M_U+1 .. M_U+F-B.
// Returned indices are 1-based ranks.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
cmpc_placement(const CacheConfig& cfg);

}
