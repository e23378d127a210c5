#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaycache/chain.hpp"
#include "relaycache/content.hpp"
#include "relaycache/phy.hpp"
#include "relaycache/sim.hpp"

namespace relaycache {

struct SweepSpec {
    std::string param;           // one of: B, q1, qR, delta, M_U, theta_db
    std::vector<double> values;  // each value validated against the param's domain
};

struct ExperimentConfig {
    NetworkGeometry geometry;
    double q1 = 0.0, qR = 0.0, alpha = 0.0;
    // When set, these bypass the Zipf derivation and are recorded in provenance.
    std::optional<double> qU_override, ph_override;
    CacheConfig cache;
    SimConfig sim;
    std::optional<SweepSpec> sweep;
};

// Resolves qU/ph from the cache section via the Zipf model unless overridden.
TrafficParams resolve_traffic(const ExperimentConfig& c);
const char* qU_source(const ExperimentConfig& c);  // "zipf" or "override"
const char* ph_source(const ExperimentConfig& c);

// Returns a copy with the swept parameter set to the given value.
ExperimentConfig apply_sweep_value(const ExperimentConfig& base,
                                   const std::string& param, double value);

// Strict parser: unknown keys, malformed values, and out-of-domain sweep values
// are ConfigErrors. parse(serialize(parse(text))) == parse(text).
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& c);

}
