#include <cmath>
#include <sstream>

#include "doctest.h"
#include "relaycache/errors.hpp"
#include "relaycache/sim.hpp"

using namespace relaycache;

namespace {
TrafficParams traffic(double q1, double qR, double alpha, double qU, double ph) {
    TrafficParams t;
    t.q1 = q1;
    t.qR = qR;
    t.alpha = alpha;
    t.qU = qU;
    t.ph = ph;
    return t;
}

CacheConfig queue_only(std::size_t B) {
    CacheConfig c;
    c.library_size = 10000;
    c.relay_storage = 10;
    c.queue_size = B;
    c.user_cache = 0;
    c.zipf_shape = 1.2;
    return c;
}

SimConfig sim_cfg(std::uint64_t slots, std::uint64_t warmup, std::uint64_t seed) {
    SimConfig s;
    s.slots = slots;
    s.warmup = warmup;
    s.seed = seed;
    return s;
}

const LinkBudget kB5 = build_link_budget(reference_geometry(5.0));
const TrafficParams kCanon = traffic(0.4, 0.8, 0.7, 1.0, 0.42450828809001157);
}

TEST_CASE("same seed reproduces the run exactly") {
    const SimConfig sc = sim_cfg(50000, 1000, 42);
    const SimResult a = run(kB5, kCanon, queue_only(5), sc);
    const SimResult b = run(kB5, kCanon, queue_only(5), sc);
    CHECK(a.counters.delivered_direct == b.counters.delivered_direct);
    CHECK(a.counters.accepted == b.counters.accepted);
    CHECK(a.counters.u2_served == b.counters.u2_served);
    CHECK(a.report.t_network == b.report.t_network);
    CHECK(a.empirical_pi == b.empirical_pi);

    const SimResult c = run(kB5, kCanon, queue_only(5), sim_cfg(50000, 1000, 43));
    CHECK(a.counters.delivered_direct != c.counters.delivered_direct);
}

TEST_CASE("counter invariants") {
    const SimResult r = run(kB5, traffic(0.7, 0.5, 0.6, 0.8, 0.3), queue_only(3),
                            sim_cfg(200000, 5000, 7));
    const auto& c = r.counters;
    CHECK(c.accepted + c.dropped_full <= c.u1r_successes);
    CHECK(c.delivered_relayed <= c.accepted + 3);  // warmup backlog at most B
    CHECK(c.u2_served + c.u2_blocked <= r.slots_counted);
    CHECK(r.fcfs_ok);
    double s = 0.0;
    for (double v : r.empirical_pi) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.slots_counted == 195000);
    CHECK(r.s_direct.size() == r.slots_counted);
}

TEST_CASE("occupancy and throughput converge to the event model") {
    const SimResult sr = run(kB5, kCanon, queue_only(5), sim_cfg(1000000, 10000, 1));
    const OraclePoint op = oracle_point(kB5, kCanon, queue_only(5),
                                        SlotSemantics::blocked);
    REQUIRE(sr.empirical_pi.size() == op.ss.pi.size());
    for (std::size_t i = 0; i < op.ss.pi.size(); ++i)
        CHECK(std::abs(sr.empirical_pi[i] - op.ss.pi[i]) <= 0.005);
    REQUIRE(sr.ci_halfwidth.count("T_1D") == 1);
    CHECK(std::abs(sr.report.t_direct - op.rep.t_direct) <=
          3 * sr.ci_halfwidth.at("T_1D"));
    CHECK(std::abs(sr.report.t_relayed - op.rep.t_relayed) <=
          3 * sr.ci_halfwidth.at("T_R"));
    CHECK(std::abs(sr.report.t_cacheable - op.rep.t_cacheable) <=
          3 * sr.ci_halfwidth.at("T_2"));
}

TEST_CASE("transition frequencies pass a chi-square test against the event model") {
    const TrafficParams t = traffic(0.8, 0.6, 0.7, 0.8, 0.4);
    const std::size_t B = 3;
    const SimResult sr = run(kB5, t, queue_only(B), sim_cfg(1000000, 10000, 5));
    const SlotOutcomeDistribution d =
        enumerate_all(link_probs(kB5), t, SlotSemantics::blocked, B);
    double chi2 = 0.0;
    int df = 0;
    for (std::size_t q = 0; q <= B; ++q) {
        const auto& obs = sr.dq_counts[q];
        const double visits = double(obs[0] + obs[1] + obs[2]);
        REQUIRE(visits > 1000);
        const double exp[3] = {visits * d.per_state[q].p_down,
                               visits * d.per_state[q].p_stay,
                               visits * d.per_state[q].p_up};
        int cells = 0;
        for (int k = 0; k < 3; ++k) {
            if (exp[k] < 1e-9) {
                CHECK(obs[k] == 0);  // impossible transitions never observed
                continue;
            }
            chi2 += (double(obs[k]) - exp[k]) * (double(obs[k]) - exp[k]) / exp[k];
            ++cells;
        }
        df += cells - 1;
    }
    CHECK(df == 6);
    CHECK(chi2 < 16.812);  // chi-square 0.99 quantile at 6 dof
}

TEST_CASE("data-center semantics shift the served-U2 rate") {
    SimConfig bl = sim_cfg(400000, 5000, 11);
    SimConfig dc = bl;
    dc.semantics = SlotSemantics::data_center;
    const SimResult a = run(kB5, kCanon, queue_only(5), bl);
    const SimResult b = run(kB5, kCanon, queue_only(5), dc);
    const OraclePoint oa = oracle_point(kB5, kCanon, queue_only(5),
                                        SlotSemantics::blocked);
    const OraclePoint ob = oracle_point(kB5, kCanon, queue_only(5),
                                        SlotSemantics::data_center);
    CHECK(std::abs(a.report.t_cacheable - oa.rep.t_cacheable) <= 0.005);
    CHECK(std::abs(b.report.t_cacheable - ob.rep.t_cacheable) <= 0.005);
}

TEST_CASE("B = 0 queue never accepts") {
    const SimResult r = run(kB5, kCanon, queue_only(0), sim_cfg(50000, 1000, 3));
    CHECK(r.counters.accepted == 0);
    CHECK(r.counters.delivered_relayed == 0);
    CHECK(r.report.t_relayed == 0.0);
    CHECK(r.empirical_pi.size() == 1);
    CHECK(r.empirical_pi[0] == 1.0);
}

TEST_CASE("batch means demand twenty batches") {
    const SimResult r = run(kB5, kCanon, queue_only(5), sim_cfg(3000, 1000, 9));
    CHECK_THROWS_AS(batch_means_ci(2000, r), ModelError);
    CHECK_NOTHROW(batch_means_ci(100, r));
    const auto ci = batch_means_ci(100, r);
    CHECK(ci.size() == 5);
    CHECK(ci.count("T") == 1);
    CHECK(ci.at("T_1D") >= 0.0);
}

TEST_CASE("halfwidths shrink roughly with the square root of the run length") {
    const SimResult small = run(kB5, kCanon, queue_only(5), sim_cfg(60000, 10000, 2));
    const SimResult big = run(kB5, kCanon, queue_only(5), sim_cfg(810000, 10000, 2));
    // 16x the retained slots: expect about a 4x reduction, allow slack
    CHECK(big.ci_halfwidth.at("T_2") < 0.6 * small.ci_halfwidth.at("T_2"));
}

TEST_CASE("trace stream carries one line per slot") {
    std::ostringstream os;
    SimConfig sc = sim_cfg(50, 10, 4);
    sc.trace = &os;
    run(kB5, kCanon, queue_only(2), sc);
    const std::string text = os.str();
    std::size_t lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 51);  // header + one row per slot
    CHECK(text.rfind("slot,q,c1,cR,r,hit,cDC,active,successes,q_after\n", 0) == 0);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(sim_cfg(1000, 1000, 1).validate(), ConfigError);
    CHECK_THROWS_AS(sim_cfg(0, 0, 1).validate(), ConfigError);
    CHECK_NOTHROW(sim_cfg(1000, 999, 1).validate());
}
