#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "relaycache/chain.hpp"
#include "relaycache/cli.hpp"
#include "relaycache/config.hpp"
#include "relaycache/content.hpp"
#include "relaycache/errors.hpp"
#include "relaycache/oracle.hpp"
#include "relaycache/phy.hpp"
#include "relaycache/sim.hpp"
#include "relaycache/throughput.hpp"

namespace py = pybind11;
using namespace relaycache;

namespace {

py::bytes indicator_bytes(const std::vector<std::uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()),
                     py::ssize_t(v.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "relay-assisted wireless network model with caching";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_ArithmeticError);

    py::enum_<Node>(m, "Node")
        .value("U1", Node::U1)
        .value("U2", Node::U2)
        .value("R", Node::R)
        .value("BS", Node::BS)
        .value("D", Node::D);

    py::enum_<SlotSemantics>(m, "SlotSemantics")
        .value("blocked", SlotSemantics::blocked)
        .value("data_center", SlotSemantics::data_center);

    py::enum_<Source>(m, "Source")
        .value("analytic", Source::closed_form)
        .value("oracle", Source::oracle)
        .value("simulated", Source::simulated);

    py::class_<NetworkGeometry>(m, "NetworkGeometry")
        .def(py::init<>())
        .def_readwrite("tx_power_w", &NetworkGeometry::tx_power_w)
        .def_readwrite("distance_m", &NetworkGeometry::distance_m)
        .def_readwrite("path_loss_exp", &NetworkGeometry::path_loss_exp)
        .def_readwrite("noise_w", &NetworkGeometry::noise_w)
        .def_readwrite("sinr_threshold_db", &NetworkGeometry::sinr_threshold_db)
        .def("validate", &NetworkGeometry::validate);

    py::class_<LinkBudget>(m, "LinkBudget")
        .def_readonly("theta_linear", &LinkBudget::theta_linear)
        .def_readonly("noise_w", &LinkBudget::noise_w)
        .def("h_at", &LinkBudget::h_at, py::arg("tx"), py::arg("rx"));

    py::class_<LinkProbs>(m, "LinkProbs")
        .def_readonly("p1d", &LinkProbs::p1d)
        .def_readonly("p1d_r", &LinkProbs::p1d_r)
        .def_readonly("p1d_bs", &LinkProbs::p1d_bs)
        .def_readonly("p1d_rbs", &LinkProbs::p1d_rbs)
        .def_readonly("p1r", &LinkProbs::p1r)
        .def_readonly("p1r_bs", &LinkProbs::p1r_bs)
        .def_readonly("prd", &LinkProbs::prd)
        .def_readonly("prd_1", &LinkProbs::prd_1)
        .def_readonly("prd_bs", &LinkProbs::prd_bs)
        .def_readonly("prd_1bs", &LinkProbs::prd_1bs)
        .def_readonly("pbs2", &LinkProbs::pbs2)
        .def_readonly("pbs2_1", &LinkProbs::pbs2_1)
        .def_readonly("pbs2_r", &LinkProbs::pbs2_r)
        .def_readonly("pbs2_1r", &LinkProbs::pbs2_1r)
        .def_readonly("pr2", &LinkProbs::pr2)
        .def_readonly("pr2_1", &LinkProbs::pr2_1);

    py::class_<SuccessRow>(m, "SuccessRow")
        .def_readonly("tx", &SuccessRow::tx)
        .def_readonly("rx", &SuccessRow::rx)
        .def_readonly("interferers", &SuccessRow::interferers)
        .def_readonly("probability", &SuccessRow::probability);

    m.def("reference_geometry", &reference_geometry, py::arg("theta_db"));
    m.def("build_link_budget", &build_link_budget, py::arg("geometry"));
    m.def("link_probs", py::overload_cast<const LinkBudget&>(&link_probs),
          py::arg("budget"));
    m.def("success_prob", &success_prob, py::arg("budget"), py::arg("tx"),
          py::arg("rx"), py::arg("active"));
    m.def("success_table", &success_table, py::arg("budget"));
    m.def("node_label", &node_label, py::arg("node"));

    py::class_<CacheConfig>(m, "CacheConfig")
        .def(py::init<>())
        .def_readwrite("library_size", &CacheConfig::library_size)
        .def_readwrite("relay_storage", &CacheConfig::relay_storage)
        .def_readwrite("queue_size", &CacheConfig::queue_size)
        .def_readwrite("user_cache", &CacheConfig::user_cache)
        .def_readwrite("zipf_shape", &CacheConfig::zipf_shape)
        .def("validate", &CacheConfig::validate);

    py::class_<PopularityModel>(m, "PopularityModel")
        .def_readonly("pmf", &PopularityModel::pmf)
        .def_readonly("normalization", &PopularityModel::normalization);

    m.def("zipf_pmf", &zipf_pmf, py::arg("cache"));
    m.def("external_request_prob", &external_request_prob, py::arg("popularity"),
          py::arg("cache"));
    m.def("relay_hit_prob", &relay_hit_prob, py::arg("popularity"), py::arg("cache"));
    m.def("cmpc_placement", &cmpc_placement, py::arg("cache"));

    py::class_<TrafficParams>(m, "TrafficParams")
        .def(py::init<>())
        .def_readwrite("q1", &TrafficParams::q1)
        .def_readwrite("qR", &TrafficParams::qR)
        .def_readwrite("alpha", &TrafficParams::alpha)
        .def_readwrite("qU", &TrafficParams::qU)
        .def_readwrite("ph", &TrafficParams::ph)
        .def("validate", &TrafficParams::validate);

    py::class_<ChainCoefficients>(m, "ChainCoefficients")
        .def(py::init<>())
        .def_readwrite("a1", &ChainCoefficients::a1)
        .def_readwrite("b0", &ChainCoefficients::b0)
        .def_readwrite("b1", &ChainCoefficients::b1)
        .def_readwrite("b2", &ChainCoefficients::b2)
        .def_readonly("rho", &ChainCoefficients::rho)
        .def_readonly("t0", &ChainCoefficients::t0);

    py::class_<SteadyState>(m, "SteadyState")
        .def_readonly("pi", &SteadyState::pi)
        .def_readonly("prob_nonempty", &SteadyState::prob_nonempty)
        .def_readonly("prob_interior", &SteadyState::prob_interior)
        .def_readonly("prob_full", &SteadyState::prob_full);

    m.def("coefficients",
          py::overload_cast<const LinkProbs&, const TrafficParams&>(&coefficients),
          py::arg("link_probs"), py::arg("traffic"));
    m.def("steady_state_closed", &steady_state_closed, py::arg("coefficients"),
          py::arg("queue_size"));
    m.def("steady_state_numeric", &steady_state_numeric, py::arg("coefficients"),
          py::arg("queue_size"));
    m.def("stationary_birth_death", &stationary_birth_death, py::arg("up"),
          py::arg("down"));

    py::class_<ThroughputReport>(m, "ThroughputReport")
        .def_readonly("t_direct", &ThroughputReport::t_direct)
        .def_readonly("t_relayed", &ThroughputReport::t_relayed)
        .def_readonly("t_noncacheable", &ThroughputReport::t_noncacheable)
        .def_readonly("t_cacheable", &ThroughputReport::t_cacheable)
        .def_readonly("t_network", &ThroughputReport::t_network)
        .def_readonly("source", &ThroughputReport::source);

    py::class_<AnalyticPoint>(m, "AnalyticPoint")
        .def_readonly("coefficients", &AnalyticPoint::co)
        .def_readonly("steady_state", &AnalyticPoint::ss)
        .def_readonly("report", &AnalyticPoint::rep);

    m.def("analytic_point", &analytic_point, py::arg("budget"), py::arg("traffic"),
          py::arg("cache"));
    m.def("analytic_report", &report, py::arg("budget"), py::arg("traffic"),
          py::arg("cache"));

    py::class_<SlotStateOutcome>(m, "SlotStateOutcome")
        .def_readonly("p_down", &SlotStateOutcome::p_down)
        .def_readonly("p_stay", &SlotStateOutcome::p_stay)
        .def_readonly("p_up", &SlotStateOutcome::p_up)
        .def_readonly("rate_direct", &SlotStateOutcome::rate_direct)
        .def_readonly("rate_accept", &SlotStateOutcome::rate_accept)
        .def_readonly("rate_u2", &SlotStateOutcome::rate_u2)
        .def_readonly("rate_depart", &SlotStateOutcome::rate_depart);

    py::class_<SlotOutcomeDistribution>(m, "SlotOutcomeDistribution")
        .def_readonly("per_state", &SlotOutcomeDistribution::per_state);

    py::class_<OraclePoint>(m, "OraclePoint")
        .def_readonly("coefficients", &OraclePoint::co)
        .def_readonly("distribution", &OraclePoint::dist)
        .def_readonly("steady_state", &OraclePoint::ss)
        .def_readonly("report", &OraclePoint::rep);

    py::class_<DiscrepancyRow>(m, "DiscrepancyRow")
        .def_readonly("quantity", &DiscrepancyRow::quantity)
        .def_readonly("closed_form", &DiscrepancyRow::closed_form)
        .def_readonly("oracle", &DiscrepancyRow::oracle)
        .def_readonly("delta", &DiscrepancyRow::delta);

    m.def("enumerate_slot", &enumerate_slot, py::arg("link_probs"), py::arg("traffic"),
          py::arg("semantics"), py::arg("queue_len"), py::arg("queue_size"));
    m.def("enumerate_all", &enumerate_all, py::arg("link_probs"), py::arg("traffic"),
          py::arg("semantics"), py::arg("queue_size"));
    m.def("oracle_coefficients", &oracle_coefficients, py::arg("link_probs"),
          py::arg("traffic"), py::arg("semantics"));
    m.def("oracle_point", &oracle_point, py::arg("budget"), py::arg("traffic"),
          py::arg("cache"), py::arg("semantics"));
    m.def("oracle_report", &oracle_report, py::arg("budget"), py::arg("traffic"),
          py::arg("cache"), py::arg("semantics"));
    m.def("discrepancy_report", &discrepancy_report, py::arg("budget"),
          py::arg("traffic"), py::arg("cache"));
    m.def("parse_semantics", &parse_semantics, py::arg("tag"));
    m.def("semantics_tag", &semantics_tag, py::arg("semantics"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("slots", &SimConfig::slots)
        .def_readwrite("warmup", &SimConfig::warmup)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("semantics", &SimConfig::semantics)
        .def("validate", &SimConfig::validate);

    py::class_<SimCounters>(m, "SimCounters")
        .def_readonly("delivered_direct", &SimCounters::delivered_direct)
        .def_readonly("delivered_relayed", &SimCounters::delivered_relayed)
        .def_readonly("accepted", &SimCounters::accepted)
        .def_readonly("dropped_full", &SimCounters::dropped_full)
        .def_readonly("u2_served", &SimCounters::u2_served)
        .def_readonly("u2_blocked", &SimCounters::u2_blocked)
        .def_readonly("u1r_successes", &SimCounters::u1r_successes);

    py::class_<SimResult>(m, "SimResult")
        .def_readonly("empirical_pi", &SimResult::empirical_pi)
        .def_readonly("report", &SimResult::report)
        .def_readonly("ci_halfwidth", &SimResult::ci_halfwidth)
        .def_readonly("counters", &SimResult::counters)
        .def_readonly("dq_counts", &SimResult::dq_counts)
        .def_readonly("slots_counted", &SimResult::slots_counted)
        .def_readonly("fcfs_ok", &SimResult::fcfs_ok)
        .def_property_readonly(
            "s_direct", [](const SimResult& r) { return indicator_bytes(r.s_direct); })
        .def_property_readonly(
            "s_accept", [](const SimResult& r) { return indicator_bytes(r.s_accept); })
        .def_property_readonly(
            "s_u2", [](const SimResult& r) { return indicator_bytes(r.s_u2); });

    m.def("run", &run, py::arg("budget"), py::arg("traffic"), py::arg("cache"),
          py::arg("sim"));
    m.def("batch_means_ci", &batch_means_ci, py::arg("samples_per_batch"),
          py::arg("result"));

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("param", &SweepSpec::param)
        .def_readwrite("values", &SweepSpec::values);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("geometry", &ExperimentConfig::geometry)
        .def_readwrite("q1", &ExperimentConfig::q1)
        .def_readwrite("qR", &ExperimentConfig::qR)
        .def_readwrite("alpha", &ExperimentConfig::alpha)
        .def_readwrite("qU_override", &ExperimentConfig::qU_override)
        .def_readwrite("ph_override", &ExperimentConfig::ph_override)
        .def_readwrite("cache", &ExperimentConfig::cache)
        .def_readwrite("sim", &ExperimentConfig::sim)
        .def_readwrite("sweep", &ExperimentConfig::sweep);

    m.def("parse_config", &parse_config, py::arg("json_text"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def("serialize_config", &serialize_config, py::arg("config"));
    m.def("resolve_traffic", &resolve_traffic, py::arg("config"));
    m.def("apply_sweep_value", &apply_sweep_value, py::arg("config"), py::arg("param"),
          py::arg("value"));
    m.def("splitmix64", &splitmix64, py::arg("x"));

    m.def(
        "cli_main",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli_main(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run a CLI invocation; returns (exit_code, stdout, stderr).");
}
