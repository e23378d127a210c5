#include <cmath>
#include <random>

#include "doctest.h"
#include "relaycache/errors.hpp"
#include "relaycache/phy.hpp"

using namespace relaycache;

namespace {
const LinkBudget kB0 = build_link_budget(reference_geometry(0.0));
const LinkBudget kB5 = build_link_budget(reference_geometry(5.0));
}

TEST_CASE("link budget h values") {
    CHECK(kB0.h_at(Node::U1, Node::D) == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(kB0.h_at(Node::R, Node::D) == doctest::Approx(8e-11).epsilon(1e-12));
    CHECK(kB0.theta_linear == doctest::Approx(1.0));
    CHECK(kB5.theta_linear == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-15));
}

TEST_CASE("missing distance names the pair") {
    NetworkGeometry g = reference_geometry(0.0);
    g.distance_m.erase({Node::U1, Node::D});
    const LinkBudget b = build_link_budget(g);
    CHECK_THROWS_WITH_AS(b.h_at(Node::U1, Node::D),
                         doctest::Contains("U1->D"), ConfigError);
}

TEST_CASE("geometry invariants") {
    NetworkGeometry g = reference_geometry(0.0);
    g.distance_m[{Node::U1, Node::D}] = 0.5;
    CHECK_THROWS_AS(build_link_budget(g), ConfigError);
    g = reference_geometry(0.0);
    g.noise_w = 0.0;
    CHECK_THROWS_AS(build_link_budget(g), ConfigError);
    g = reference_geometry(0.0);
    g.tx_power_w[Node::R] = -1.0;
    CHECK_THROWS_AS(build_link_budget(g), ConfigError);
}

TEST_CASE("success probabilities, exact values at theta=0") {
    const LinkProbs p = link_probs(kB0);
    CHECK(p.p1d == doctest::Approx(0.3678794411714424).epsilon(1e-14));
    CHECK(p.p1d_r == doctest::Approx(0.040875493463493597).epsilon(1e-14));
    CHECK(p.p1d_bs == doctest::Approx(0.03344358556104022).epsilon(1e-14));
    CHECK(p.p1d_rbs == doctest::Approx(0.0037159539512266904).epsilon(1e-14));
    CHECK(p.p1r == doctest::Approx(0.7788007830714049).epsilon(1e-14));
    CHECK(p.p1r_bs == doctest::Approx(0.07080007118830954).epsilon(1e-14));
    CHECK(p.prd == doctest::Approx(0.8824969025845955).epsilon(1e-14));
    CHECK(p.prd_1 == doctest::Approx(0.784441691186307).epsilon(1e-14));
    CHECK(p.prd_bs == doctest::Approx(0.3922208455931535).epsilon(1e-14));
    CHECK(p.prd_1bs == doctest::Approx(0.34864075163835867).epsilon(1e-14));
    CHECK(p.pbs2 == doctest::Approx(0.9048374180359596).epsilon(1e-14));
    CHECK(p.pbs2_1 == doctest::Approx(0.8225794709417814).epsilon(1e-14));
    CHECK(p.pbs2_r == doctest::Approx(0.5026874544644221).epsilon(1e-14));
    CHECK(p.pbs2_1r == doctest::Approx(0.45698859496765637).epsilon(1e-14));
    CHECK(p.pr2 == doctest::Approx(0.8824969025845955).epsilon(1e-14));
    CHECK(p.pr2_1 == doctest::Approx(0.784441691186307).epsilon(1e-14));
}

TEST_CASE("success probabilities, exact values at theta=5") {
    const LinkProbs p = link_probs(kB5);
    CHECK(p.p1d == doctest::Approx(0.04232921962320501).epsilon(1e-14));
    CHECK(p.p1d_r == doctest::Approx(0.0016095848905655283).epsilon(1e-14));
    CHECK(p.p1d_rbs == doctest::Approx(4.933929782305688e-05).epsilon(1e-14));
    CHECK(p.p1r == doctest::Approx(0.4535864427910235).epsilon(1e-14));
    CHECK(p.prd == doctest::Approx(0.6734882647760267).epsilon(1e-14));
    CHECK(p.prd_1bs == doctest::Approx(0.09745682970100619).epsilon(1e-14));
    CHECK(p.pbs2 == doctest::Approx(0.7288934141100246).epsilon(1e-14));
    CHECK(p.pbs2_r == doctest::Approx(0.20649579147354954).epsilon(1e-14));
    CHECK(p.pr2_1 == doctest::Approx(0.4826887739439138).epsilon(1e-14));
}

TEST_CASE("theta_linear = 0 gives certainty") {
    NetworkGeometry g = reference_geometry(0.0);
    g.sinr_threshold_db = -320.0;  // theta_linear = 1e-32
    const LinkBudget b = build_link_budget(g);
    CHECK(success_prob(b, Node::U1, Node::D, {Node::U1, Node::R, Node::BS}) ==
          doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("success_table layout and ordering") {
    const auto rows = success_table(kB0);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0].tx == Node::U1);
    CHECK(rows[0].rx == Node::D);
    CHECK(rows[0].interferers.empty());
    CHECK(rows[0].probability == doctest::Approx(0.3678794411714424).epsilon(1e-14));
    // R->D/1,BS is the 10th entry
    CHECK(rows[9].tx == Node::R);
    CHECK(rows[9].rx == Node::D);
    REQUIRE(rows[9].interferers.size() == 2);
    CHECK(rows[9].probability == doctest::Approx(0.34864075163835867).epsilon(1e-14));
    // table ends with R->2/1
    CHECK(rows[15].tx == Node::R);
    CHECK(rows[15].rx == Node::U2);
    CHECK(rows[15].probability == doctest::Approx(0.784441691186307).epsilon(1e-14));
}

TEST_CASE("contract violations") {
    CHECK_THROWS_AS(success_prob(kB0, Node::U1, Node::D, {Node::R}),
                    std::invalid_argument);
    CHECK_THROWS_AS(success_prob(kB0, Node::U1, Node::D, {Node::U1, Node::D}),
                    std::invalid_argument);
}

TEST_CASE("adding an interferer never raises success probability") {
    const LinkProbs p = link_probs(kB5);
    CHECK(p.p1d_r < p.p1d);
    CHECK(p.p1d_bs < p.p1d);
    CHECK(p.p1d_rbs < p.p1d_r);
    CHECK(p.p1d_rbs < p.p1d_bs);
    CHECK(p.p1r_bs < p.p1r);
    CHECK(p.prd_1bs < p.prd_1);
    CHECK(p.pbs2_1r < p.pbs2_r);
}

TEST_CASE("scale invariance of powers and noise") {
    NetworkGeometry g = reference_geometry(5.0);
    for (auto& [n, p] : g.tx_power_w) p *= 1000.0;
    g.noise_w *= 1000.0;
    const LinkProbs a = link_probs(kB5);
    const LinkProbs b = link_probs(build_link_budget(g));
    CHECK(a.p1d == doctest::Approx(b.p1d).epsilon(1e-14));
    CHECK(a.prd_1bs == doctest::Approx(b.prd_1bs).epsilon(1e-14));
    CHECK(a.pbs2_1r == doctest::Approx(b.pbs2_1r).epsilon(1e-14));
}

TEST_CASE("fade-sampling Monte Carlo agrees with the closed form") {
    // SINR test with unit-mean exponential gains; 1e6 draws, 99% binomial CI.
    const NetworkGeometry g = reference_geometry(5.0);
    const LinkBudget b = kB5;
    std::mt19937_64 gen(12345);
    std::exponential_distribution<double> expo(1.0);
    const double h1d = b.h_at(Node::U1, Node::D);
    const double hrd = b.h_at(Node::R, Node::D);
    const double hbsd = b.h_at(Node::BS, Node::D);
    const double theta = b.theta_linear;
    const int n = 1000000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const double sig = h1d * expo(gen);
        const double interf = hrd * expo(gen) + hbsd * expo(gen);
        if (sig >= theta * (interf + g.noise_w)) ++hits;
    }
    const double est = double(hits) / n;
    const double p = link_probs(b).p1d_rbs;
    const double ci = 2.5758293035489004 * std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(est - p) <= ci);
}
