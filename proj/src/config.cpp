#include "relaycache/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "relaycache/errors.hpp"

namespace relaycache {

using json = nlohmann::ordered_json;

namespace {

void check_keys(const json& obj, const char* section, std::set<std::string> allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw ConfigError(std::string("unknown key \"") + key + "\" in " + section);
    }
}

double need_number(const json& obj, const char* section, const char* key) {
    if (!obj.contains(key))
        throw ConfigError(std::string(section) + " is missing \"" + key + "\"");
    const auto& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(std::string(section) + "." + key + " must be a number");
    return v.get<double>();
}

std::size_t need_count(const json& obj, const char* section, const char* key) {
    const double v = need_number(obj, section, key);
    if (v < 0 || v != std::floor(v))
        throw ConfigError(std::string(section) + "." + key +
                          " must be a non-negative integer");
    return std::size_t(v);
}

std::optional<double> optional_number(const json& obj, const char* section,
                                      const char* key) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    if (!obj.at(key).is_number())
        throw ConfigError(std::string(section) + "." + key + " must be a number or null");
    return obj.at(key).get<double>();
}

void validate_sweep(const SweepSpec& sw, const ExperimentConfig& c) {
    static const std::set<std::string> params = {"B", "q1", "qR", "delta", "M_U",
                                                 "theta_db"};
    if (!params.count(sw.param))
        throw ConfigError("sweep.param must be one of B, q1, qR, delta, M_U, theta_db");
    if (sw.values.empty()) throw ConfigError("sweep.values must be non-empty");
    for (double v : sw.values) {
        if (sw.param == "B") {
            if (v < 0 || v != std::floor(v) || std::size_t(v) > c.cache.relay_storage)
                throw ConfigError("sweep value B = " + std::to_string(v) +
                                  " outside 0..F");
        } else if (sw.param == "q1" || sw.param == "qR") {
            if (!(v >= 0.0 && v <= 1.0))
                throw ConfigError("sweep value " + sw.param + " = " + std::to_string(v) +
                                  " outside [0,1]");
        } else if (sw.param == "delta") {
            if (!(v >= 0.0))
                throw ConfigError("sweep value delta must be >= 0");
        } else if (sw.param == "M_U") {
            if (v < 0 || v != std::floor(v) ||
                std::size_t(v) + c.cache.relay_storage > c.cache.library_size)
                throw ConfigError("sweep value M_U = " + std::to_string(v) +
                                  " violates M_U + F <= N");
        }
        // theta_db: any real value is a valid threshold
    }
}

}  // namespace

TrafficParams resolve_traffic(const ExperimentConfig& c) {
    TrafficParams t;
    t.q1 = c.q1;
    t.qR = c.qR;
    t.alpha = c.alpha;
    if (c.qU_override && c.ph_override) {
        t.qU = *c.qU_override;
        t.ph = *c.ph_override;
    } else {
        const PopularityModel pm = zipf_pmf(c.cache);
        t.qU = c.qU_override ? *c.qU_override : external_request_prob(pm, c.cache);
        t.ph = c.ph_override ? *c.ph_override : relay_hit_prob(pm, c.cache);
    }
    t.validate();
    return t;
}

const char* qU_source(const ExperimentConfig& c) {
    return c.qU_override ? "override" : "zipf";
}

const char* ph_source(const ExperimentConfig& c) {
    return c.ph_override ? "override" : "zipf";
}

ExperimentConfig apply_sweep_value(const ExperimentConfig& base,
                                   const std::string& param, double value) {
    ExperimentConfig c = base;
    if (param == "B") c.cache.queue_size = std::size_t(value);
    else if (param == "q1") c.q1 = value;
    else if (param == "qR") c.qR = value;
    else if (param == "delta") c.cache.zipf_shape = value;
    else if (param == "M_U") c.cache.user_cache = std::size_t(value);
    else if (param == "theta_db") c.geometry.sinr_threshold_db = value;
    else throw ConfigError("unknown sweep param: " + param);
    return c;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    check_keys(root, "config", {"geometry", "traffic", "cache", "sim", "sweep"});

    ExperimentConfig c;

    if (!root.contains("geometry")) throw ConfigError("config is missing \"geometry\"");
    const json& g = root.at("geometry");
    check_keys(g, "geometry",
               {"tx_power_w", "distance_m", "path_loss_exp", "noise_w",
                "sinr_threshold_db"});
    if (!g.contains("tx_power_w") || !g.at("tx_power_w").is_object())
        throw ConfigError("geometry.tx_power_w must be an object of node -> watts");
    for (const auto& [name, v] : g.at("tx_power_w").items()) {
        if (!v.is_number()) throw ConfigError("geometry.tx_power_w." + name);
        c.geometry.tx_power_w[parse_node(name)] = v.get<double>();
    }
    if (!g.contains("distance_m") || !g.at("distance_m").is_object())
        throw ConfigError("geometry.distance_m must be an object of \"TX->RX\" -> meters");
    for (const auto& [name, v] : g.at("distance_m").items()) {
        const auto arrow = name.find("->");
        if (arrow == std::string::npos)
            throw ConfigError("geometry.distance_m key \"" + name +
                              "\" must look like \"U1->D\"");
        if (!v.is_number()) throw ConfigError("geometry.distance_m." + name);
        const Node tx = parse_node(name.substr(0, arrow));
        const Node rx = parse_node(name.substr(arrow + 2));
        c.geometry.distance_m[{tx, rx}] = v.get<double>();
    }
    c.geometry.path_loss_exp = need_number(g, "geometry", "path_loss_exp");
    c.geometry.noise_w = need_number(g, "geometry", "noise_w");
    c.geometry.sinr_threshold_db = need_number(g, "geometry", "sinr_threshold_db");
    c.geometry.validate();

    if (!root.contains("traffic")) throw ConfigError("config is missing \"traffic\"");
    const json& t = root.at("traffic");
    check_keys(t, "traffic", {"q1", "qR", "alpha", "qU", "ph"});
    c.q1 = need_number(t, "traffic", "q1");
    c.qR = need_number(t, "traffic", "qR");
    c.alpha = need_number(t, "traffic", "alpha");
    c.qU_override = optional_number(t, "traffic", "qU");
    c.ph_override = optional_number(t, "traffic", "ph");

    if (!root.contains("cache")) throw ConfigError("config is missing \"cache\"");
    const json& k = root.at("cache");
    check_keys(k, "cache",
               {"library_size", "relay_storage", "queue_size", "user_cache",
                "zipf_shape"});
    c.cache.library_size = need_count(k, "cache", "library_size");
    c.cache.relay_storage = need_count(k, "cache", "relay_storage");
    c.cache.queue_size = need_count(k, "cache", "queue_size");
    c.cache.user_cache = need_count(k, "cache", "user_cache");
    c.cache.zipf_shape = need_number(k, "cache", "zipf_shape");
    c.cache.validate();

    if (root.contains("sim")) {
        const json& s = root.at("sim");
        check_keys(s, "sim", {"slots", "warmup", "seed", "semantics"});
        if (s.contains("slots")) c.sim.slots = std::uint64_t(need_count(s, "sim", "slots"));
        if (s.contains("warmup")) c.sim.warmup = std::uint64_t(need_count(s, "sim", "warmup"));
        if (s.contains("seed")) {
            if (!s.at("seed").is_number_unsigned())
                throw ConfigError("sim.seed must be an unsigned integer");
            c.sim.seed = s.at("seed").get<std::uint64_t>();
        }
        if (s.contains("semantics")) {
            if (!s.at("semantics").is_string()) throw ConfigError("sim.semantics");
            c.sim.semantics = parse_semantics(s.at("semantics").get<std::string>());
        }
        c.sim.validate();
    }

    if (root.contains("sweep") && !root.at("sweep").is_null()) {
        const json& sw = root.at("sweep");
        check_keys(sw, "sweep", {"param", "values"});
        SweepSpec spec;
        if (!sw.contains("param") || !sw.at("param").is_string())
            throw ConfigError("sweep.param must be a string");
        spec.param = sw.at("param").get<std::string>();
        if (!sw.contains("values") || !sw.at("values").is_array())
            throw ConfigError("sweep.values must be an array of numbers");
        for (const auto& v : sw.at("values")) {
            if (!v.is_number()) throw ConfigError("sweep.values must be numbers");
            spec.values.push_back(v.get<double>());
        }
        validate_sweep(spec, c);
        c.sweep = std::move(spec);
    }

    // Overridden traffic probabilities are validated here; derived ones at use.
    TrafficParams probe;
    probe.q1 = c.q1;
    probe.qR = c.qR;
    probe.alpha = c.alpha;
    probe.qU = c.qU_override.value_or(0.0);
    probe.ph = c.ph_override.value_or(0.0);
    probe.validate();

    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
    json g;
    json powers;
    for (const auto& [node, p] : c.geometry.tx_power_w) powers[node_name(node)] = p;
    json dists;
    for (const auto& [pr, d] : c.geometry.distance_m)
        dists[std::string(node_name(pr.first)) + "->" + node_name(pr.second)] = d;
    g["tx_power_w"] = powers;
    g["distance_m"] = dists;
    g["path_loss_exp"] = c.geometry.path_loss_exp;
    g["noise_w"] = c.geometry.noise_w;
    g["sinr_threshold_db"] = c.geometry.sinr_threshold_db;

    json t;
    t["q1"] = c.q1;
    t["qR"] = c.qR;
    t["alpha"] = c.alpha;
    if (c.qU_override) t["qU"] = *c.qU_override;
    if (c.ph_override) t["ph"] = *c.ph_override;

    json k;
    k["library_size"] = c.cache.library_size;
    k["relay_storage"] = c.cache.relay_storage;
    k["queue_size"] = c.cache.queue_size;
    k["user_cache"] = c.cache.user_cache;
    k["zipf_shape"] = c.cache.zipf_shape;

    json s;
    s["slots"] = c.sim.slots;
    s["warmup"] = c.sim.warmup;
    s["seed"] = c.sim.seed;
    s["semantics"] = semantics_tag(c.sim.semantics);

    json root;
    root["geometry"] = g;
    root["traffic"] = t;
    root["cache"] = k;
    root["sim"] = s;
    if (c.sweep) {
        json sw;
        sw["param"] = c.sweep->param;
        sw["values"] = c.sweep->values;
        root["sweep"] = sw;
    }
    return root.dump(2) + "\n";
}

}
