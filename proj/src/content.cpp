#include "relaycache/content.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "relaycache/errors.hpp"

namespace relaycache {

void CacheConfig::validate() const {
    if (library_size == 0) throw ConfigError("library_size must be >= 1");
    if (queue_size > relay_storage)
        throw ConfigError("queue_size B = " + std::to_string(queue_size) +
                          " exceeds relay_storage F = " + std::to_string(relay_storage));
    if (user_cache + relay_storage > library_size)
        throw ConfigError("CMPC placement does not fit: M_U + F > N");
    if (zipf_shape < 0.0) throw ConfigError("zipf_shape must be >= 0");
}

PopularityModel zipf_pmf(const CacheConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.library_size;
    PopularityModel pm;
    pm.pmf.resize(n);
    double sum = 0.0;
    for (std::size_t j = n; j >= 1; --j) sum += std::pow(double(j), -cfg.zipf_shape);
    pm.normalization = 1.0 / sum;
    for (std::size_t i = 1; i <= n; ++i)
        pm.pmf[i - 1] = pm.normalization * std::pow(double(i), -cfg.zipf_shape);
    return pm;
}

double external_request_prob(const PopularityModel& pm, const CacheConfig& cfg) {
    if (cfg.user_cache > pm.pmf.size()) throw ConfigError("user_cache M_U exceeds library size");
    double cached = 0.0;
    for (std::size_t i = cfg.user_cache; i >= 1; --i) cached += pm.pmf[i - 1];
    return 1.0 - cached;
}

double relay_hit_prob(const PopularityModel& pm, const CacheConfig& cfg) {
    const std::size_t lo = cfg.user_cache + 1;                                  // M_U + 1
    const std::size_t hi = cfg.user_cache + cfg.relay_storage - cfg.queue_size; // M_U + F - B
    if (hi > pm.pmf.size()) throw ConfigError("relay placement M_U + F - B exceeds library size");
    double p = 0.0;
    for (std::size_t i = hi; i >= lo && i >= 1; --i) p += pm.pmf[i - 1];
    return p;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
cmpc_placement(const CacheConfig& cfg) {
    cfg.validate();
    std::vector<std::size_t> user(cfg.user_cache);
    std::iota(user.begin(), user.end(), std::size_t{1});
    std::vector<std::size_t> relay(cfg.relay_storage - cfg.queue_size);
    std::iota(relay.begin(), relay.end(), cfg.user_cache + 1);
    return {std::move(user), std::move(relay)};
}

}
