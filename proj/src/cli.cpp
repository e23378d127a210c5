#include "relaycache/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "relaycache/config.hpp"
#include "relaycache/csvio.hpp"
#include "relaycache/errors.hpp"
#include "relaycache/oracle.hpp"
#include "relaycache/sim.hpp"

namespace relaycache {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace {

constexpr double kZ99 = 2.5758293035489004;

// One sweep-CSV row. Optional cells stay empty, never zero.
struct Row {
    std::string param, value, source, seed, semantics, qU_src, ph_src;
    bool has_co = false;
    ChainCoefficients co;
    std::vector<double> pi;
    ThroughputReport rep{};
    std::map<std::string, double> ci;  // empty unless simulated
};

const std::vector<std::string> kThroughputCols = {"T_1D", "T_R", "T_D", "T_2", "T"};

void write_rows(std::ostream& os, const std::vector<Row>& rows) {
    std::size_t max_b = 0;
    for (const auto& r : rows)
        if (!r.pi.empty()) max_b = std::max(max_b, r.pi.size() - 1);
    std::vector<std::string> h = {"param", "value", "source", "a1", "b0", "b1", "b2"};
    for (std::size_t i = 0; i <= max_b; ++i) h.push_back("pi" + std::to_string(i));
    for (const auto& m : kThroughputCols) h.push_back(m);
    for (const auto& m : kThroughputCols) h.push_back("ci_" + m);
    h.insert(h.end(), {"seed", "semantics", "qU_source", "ph_source"});
    os << csv_join(h) << "\n";

    for (const auto& r : rows) {
        std::vector<std::string> cells = {r.param, r.value, r.source};
        if (r.has_co) {
            cells.push_back(fmt_g12(r.co.a1));
            cells.push_back(fmt_g12(r.co.b0));
            cells.push_back(fmt_g12(r.co.b1));
            cells.push_back(fmt_g12(r.co.b2));
        } else {
            cells.insert(cells.end(), {"", "", "", ""});
        }
        for (std::size_t i = 0; i <= max_b; ++i)
            cells.push_back(i < r.pi.size() ? fmt_g12(r.pi[i]) : "");
        const double tv[5] = {r.rep.t_direct, r.rep.t_relayed, r.rep.t_noncacheable,
                              r.rep.t_cacheable, r.rep.t_network};
        for (double v : tv) cells.push_back(fmt_g12(v));
        for (const auto& m : kThroughputCols) {
            auto it = r.ci.find(m);
            cells.push_back(it == r.ci.end() ? "" : fmt_g12(it->second));
        }
        cells.push_back(r.seed);
        cells.push_back(r.semantics);
        cells.push_back(r.qU_src);
        cells.push_back(r.ph_src);
        os << csv_join(cells) << "\n";
    }
}

Row base_row(const ExperimentConfig& c, const std::string& param,
             const std::string& value) {
    Row r;
    r.param = param;
    r.value = value;
    r.qU_src = qU_source(c);
    r.ph_src = ph_source(c);
    return r;
}

Row analytic_row(const ExperimentConfig& c, const std::string& param,
                 const std::string& value) {
    Row r = base_row(c, param, value);
    r.source = "analytic";
    const LinkBudget budget = build_link_budget(c.geometry);
    const AnalyticPoint ap = analytic_point(budget, resolve_traffic(c), c.cache);
    r.has_co = true;
    r.co = ap.co;
    r.pi = ap.ss.pi;
    r.rep = ap.rep;
    return r;
}

Row oracle_row(const ExperimentConfig& c, const std::string& param,
               const std::string& value) {
    Row r = base_row(c, param, value);
    r.source = "oracle";
    r.semantics = semantics_tag(c.sim.semantics);
    const LinkBudget budget = build_link_budget(c.geometry);
    const OraclePoint op = oracle_point(budget, resolve_traffic(c), c.cache,
                                        c.sim.semantics);
    r.has_co = true;
    r.co = op.co;
    r.pi = op.ss.pi;
    r.rep = op.rep;
    return r;
}

Row simulate_row(const ExperimentConfig& c, const std::string& param,
                 const std::string& value, std::uint64_t seed,
                 std::ostream* trace) {
    Row r = base_row(c, param, value);
    r.source = "simulated";
    r.seed = std::to_string(seed);
    r.semantics = semantics_tag(c.sim.semantics);
    SimConfig sc = c.sim;
    sc.seed = seed;
    sc.trace = trace;
    const LinkBudget budget = build_link_budget(c.geometry);
    const SimResult sr = run(budget, resolve_traffic(c), c.cache, sc);
    r.pi = sr.empirical_pi;
    r.rep = sr.report;
    r.ci = sr.ci_halfwidth;
    return r;
}

int run_links(const ExperimentConfig& c, std::ostream& os) {
    const LinkBudget budget = build_link_budget(c.geometry);
    os << "link,interferers,theta_db,probability\n";
    for (const auto& row : success_table(budget)) {
        std::string intf;
        for (std::size_t i = 0; i < row.interferers.size(); ++i) {
            if (i) intf += '+';
            intf += node_label(row.interferers[i]);
        }
        os << node_label(row.tx) << "->" << node_label(row.rx) << ',' << intf << ','
           << fmt_g12(c.geometry.sinr_threshold_db) << ',' << fmt_g12(row.probability)
           << '\n';
    }
    return 0;
}

int run_sweep(const ExperimentConfig& c, const std::string& mode, std::ostream& os) {
    if (!c.sweep) throw ConfigError("sweep requires a sweep section in the config");
    const bool want_analytic = mode == "analytic" || mode == "all";
    const bool want_oracle = mode == "oracle" || mode == "all";
    const bool want_sim = mode == "simulate" || mode == "all";
    std::vector<Row> rows;
    for (std::size_t i = 0; i < c.sweep->values.size(); ++i) {
        const double v = c.sweep->values[i];
        const ExperimentConfig pt = apply_sweep_value(c, c.sweep->param, v);
        const std::string vs = fmt_g12(v);
        if (want_analytic) rows.push_back(analytic_row(pt, c.sweep->param, vs));
        if (want_oracle) rows.push_back(oracle_row(pt, c.sweep->param, vs));
        if (want_sim)
            rows.push_back(simulate_row(pt, c.sweep->param, vs,
                                        splitmix64(c.sim.seed + i), nullptr));
    }
    write_rows(os, rows);
    return 0;
}

int run_compare(const ExperimentConfig& c, std::ostream& os, std::ostream& err) {
    const LinkBudget budget = build_link_budget(c.geometry);
    const TrafficParams t = resolve_traffic(c);
    const auto disc = discrepancy_report(budget, t, c.cache);
    const OraclePoint op = oracle_point(budget, t, c.cache, c.sim.semantics);
    const SimResult sr = run(budget, t, c.cache, c.sim);
    const std::size_t B = c.cache.queue_size;

    // Empirical transition frequencies mirror the coefficient rows.
    auto freq = [&](std::size_t q, int which, double& phat, double& n) {
        n = double(sr.dq_counts[q][0] + sr.dq_counts[q][1] + sr.dq_counts[q][2]);
        phat = n > 0 ? double(sr.dq_counts[q][which]) / n : 0.0;
    };
    auto pooled_freq = [&](int which, double& phat, double& n) {
        std::uint64_t hits = 0, total = 0;
        for (std::size_t q = 1; q < B; ++q) {
            hits += sr.dq_counts[q][which];
            total += sr.dq_counts[q][0] + sr.dq_counts[q][1] + sr.dq_counts[q][2];
        }
        n = double(total);
        phat = total > 0 ? double(hits) / double(total) : 0.0;
    };

    os << "quantity,analytic,oracle,delta,sim,ci99,consistent\n";
    int consistent_count = 0, ci_count = 0;
    std::string max_q;
    double max_d = -1.0;
    for (const auto& d : disc) {
        if (std::abs(d.delta) > max_d) { max_d = std::abs(d.delta); max_q = d.quantity; }
        std::string sim_cell, ci_cell, cons_cell;
        double oracle_for_sim = d.oracle;
        bool have = false;
        double phat = 0.0, n = 0.0, hw = 0.0;
        if (d.quantity == "a1" && B >= 1) {
            freq(0, 2, phat, n);
            have = n > 0;
            oracle_for_sim = op.dist.per_state[0].p_up;
        } else if ((d.quantity == "b0" || d.quantity == "b2") && B >= 2) {
            pooled_freq(d.quantity == "b0" ? 0 : 2, phat, n);
            have = n > 0;
            oracle_for_sim = d.quantity == "b0" ? op.dist.per_state[1].p_down
                                                : op.dist.per_state[1].p_up;
        } else if (d.quantity.rfind("T", 0) == 0) {
            auto it = sr.ci_halfwidth.find(d.quantity);
            if (it != sr.ci_halfwidth.end()) {
                const double tv[4] = {sr.report.t_direct, sr.report.t_relayed,
                                      sr.report.t_noncacheable, sr.report.t_cacheable};
                const char* names[4] = {"T_1D", "T_R", "T_D", "T_2"};
                for (int i = 0; i < 4; ++i)
                    if (d.quantity == names[i]) { phat = tv[i]; break; }
                hw = it->second;
                have = true;
                // Coverage is judged against the oracle under the run's semantics.
                const double ov[4] = {op.rep.t_direct, op.rep.t_relayed,
                                      op.rep.t_noncacheable, op.rep.t_cacheable};
                for (int i = 0; i < 4; ++i)
                    if (d.quantity == names[i]) { oracle_for_sim = ov[i]; break; }
            }
        }
        if (have) {
            if (hw == 0.0 && n > 0.0) hw = kZ99 * std::sqrt(phat * (1.0 - phat) / n);
            sim_cell = fmt_g12(phat);
            ci_cell = fmt_g12(hw);
            const bool consistent = std::abs(oracle_for_sim - phat) <= hw;
            cons_cell = consistent ? "yes" : "no";
            ci_count += 1;
            consistent_count += consistent ? 1 : 0;
        }
        os << d.quantity << ',' << fmt_g12(d.closed_form) << ',' << fmt_g12(d.oracle)
           << ',' << fmt_g12(d.delta) << ',' << sim_cell << ',' << ci_cell << ','
           << cons_cell << '\n';
    }

    err << "compare: B=" << B << ", qU=" << fmt_g12(t.qU) << " (" << qU_source(c)
        << "), ph=" << fmt_g12(t.ph) << " (" << ph_source(c)
        << "), semantics=" << semantics_tag(c.sim.semantics) << "\n";
    err << "  largest |analytic-oracle| delta: " << max_q << " (" << fmt_g12(max_d)
        << ")\n";
    err << "  simulated quantities inside 99% CI of oracle: " << consistent_count
        << "/" << ci_count << "\n";
    return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"relay-assisted wireless network model with caching"};
    app.require_subcommand(1);

    std::string config_path, out_path, semantics_str, mode = "analytic", trace_path;
    std::uint64_t seed = 0;
    auto* config_opt =
        app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--out", out_path, "write CSV to this file instead of stdout");
    auto* seed_opt = app.add_option("--seed", seed, "override the sim seed");
    app.add_option("--semantics", semantics_str,
                   "busy-hit handling: blocked or data-center")
        ->check(CLI::IsMember({"blocked", "data-center"}));

    auto* links = app.add_subcommand("links", "link success-probability table");
    auto* analytic = app.add_subcommand("analytic", "closed-form chain and throughputs");
    auto* oracle_cmd = app.add_subcommand("oracle", "exact slot-event enumeration");
    auto* simulate = app.add_subcommand("simulate", "seeded Monte Carlo simulation");
    simulate->add_option("--trace", trace_path, "write a per-slot trace CSV here");
    auto* sweep = app.add_subcommand("sweep", "one CSV row per sweep value per source");
    sweep->add_option("--mode", mode, "analytic, oracle, simulate, or all")
        ->check(CLI::IsMember({"analytic", "oracle", "simulate", "all"}));
    auto* compare =
        app.add_subcommand("compare", "closed-form vs oracle vs simulation deltas");
    for (auto* s : {links, analytic, oracle_cmd, simulate, sweep, compare})
        s->fallthrough();
    (void)config_opt;

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig c = load_config(config_path);
        if (seed_opt->count() > 0) c.sim.seed = seed;
        if (!semantics_str.empty()) c.sim.semantics = parse_semantics(semantics_str);

        std::ofstream ofs;
        std::ostream* os = &out;
        if (!out_path.empty()) {
            ofs.open(out_path);
            if (!ofs) throw ConfigError("cannot open output file: " + out_path);
            os = &ofs;
        }

        if (links->parsed()) return run_links(c, *os);
        if (analytic->parsed()) {
            write_rows(*os, {analytic_row(c, "", "")});
            return 0;
        }
        if (oracle_cmd->parsed()) {
            write_rows(*os, {oracle_row(c, "", "")});
            return 0;
        }
        if (simulate->parsed()) {
            std::ofstream trace_f;
            std::ostream* trace = nullptr;
            if (!trace_path.empty()) {
                trace_f.open(trace_path);
                if (!trace_f) throw ConfigError("cannot open trace file: " + trace_path);
                trace = &trace_f;
            }
            write_rows(*os, {simulate_row(c, "", "", c.sim.seed, trace)});
            return 0;
        }
        if (sweep->parsed()) return run_sweep(c, mode, *os);
        if (compare->parsed()) return run_compare(c, *os, err);
        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        err << "model error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}
