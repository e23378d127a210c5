#include "relaycache/chain.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "relaycache/errors.hpp"

namespace relaycache {

static void check01(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError(std::string(name) + " must lie in [0,1]");
}

void TrafficParams::validate() const {
    check01(q1, "q1");
    check01(qR, "qR");
    check01(alpha, "alpha");
    check01(qU, "qU");
    check01(ph, "ph");
}

SteadyState make_steady_state(std::vector<double> pi) {
    SteadyState ss;
    ss.pi = std::move(pi);
    const std::size_t B = ss.pi.size() - 1;
    ss.prob_nonempty = 1.0 - ss.pi[0];
    ss.prob_full = B >= 1 ? ss.pi[B] : 0.0;
    ss.prob_interior = 0.0;
    for (std::size_t i = 1; i < B; ++i) ss.prob_interior += ss.pi[i];
    return ss;
}

ChainCoefficients coefficients(const LinkProbs& p, const TrafficParams& t) {
    t.validate();
    const double q1 = t.q1, qR = t.qR, al = t.alpha, qU = t.qU, ph = t.ph;
    const double nq1 = 1.0 - q1, nqR = 1.0 - qR, nal = 1.0 - al;
    const double nqU = 1.0 - qU, nph = 1.0 - ph;

    // Terms follow the printed grouping exactly; no algebraic simplification.
    const double a1 =
          q1 * nqU * (1.0 - p.p1d) * p.p1r
        + q1 * qU * ph * (1.0 - p.p1d_r) * p.p1r
        + q1 * qU * nph * al * (1.0 - p.p1d_bs) * p.p1r_bs
        + q1 * qU * nph * nal * (1.0 - p.p1d) * p.p1r;

    const double b0 =
          qR * nq1 * (nqU * p.prd + qU * nph * (al * p.prd_bs + nal * p.prd))
        + qR * q1 * nqU *
              (p.prd_1 * (p.p1d_r + (1.0 - p.p1d_r) * (1.0 - p.p1r)))
        + qR * q1 * qU * nph *
              (al * (p.prd_1bs * (p.p1d_rbs + (1.0 - p.p1d_rbs) * (1.0 - p.p1r_bs)))
             + nal * (p.prd_1 * (p.p1d_r + (1.0 - p.p1d_r) * (1.0 - p.p1r))));

    const double b2 =
          q1 * qR * nqU * (1.0 - p.prd_1) * (1.0 - p.p1d_r) * p.p1r
        + q1 * qR * qU * nph * al * (1.0 - p.prd_1bs) * (1.0 - p.p1d_rbs) * p.p1r_bs
        + q1 * qR * qU * nph * nal * (1.0 - p.prd_1) * (1.0 - p.p1d_r) * p.p1r
        + q1 * nqR * (nqU * (1.0 - p.p1d) * p.p1r + qU * ph * (1.0 - p.p1d_r) * p.p1r)
        + q1 * nqR * qU * nph * al * (1.0 - p.p1d_bs) * p.p1r_bs
        + q1 * nqR * qU * nph * nal * (1.0 - p.p1d) * p.p1r;

    double b1 = 1.0 - b0 - b2;
    if (b1 < -1e-12) {
        char msg[128];
        std::snprintf(msg, sizeof msg,
                      "inconsistent chain: b0 + b2 = %.17g exceeds 1", b0 + b2);
        throw ModelError(msg);
    }
    if (b1 < 0.0) b1 = 0.0;  // rounding noise only

    ChainCoefficients co;
    co.a1 = a1;
    co.b0 = b0;
    co.b1 = b1;
    co.b2 = b2;
    if (b0 > 0.0) {
        co.rho = b2 / b0;
        co.t0 = a1 / b0;
    }
    return co;
}

ChainCoefficients coefficients(const LinkBudget& budget, const TrafficParams& t) {
    return coefficients(link_probs(budget), t);
}

SteadyState steady_state_closed(const ChainCoefficients& co, std::size_t B) {
    if (B == 0) return make_steady_state({1.0});
    if (!(co.b0 > 0.0))
        throw ModelError("steady_state_closed requires b0 > 0; use steady_state_numeric");
    const double rho = co.b2 / co.b0;
    const double t0 = co.a1 / co.b0;
    const double geom =
        std::abs(1.0 - rho) < 1e-9 ? double(B) : (1.0 - std::pow(rho, double(B))) / (1.0 - rho);
    const double pi0 = 1.0 / (1.0 + t0 * geom);
    std::vector<double> pi(B + 1);
    pi[0] = pi0;
    for (std::size_t i = 1; i <= B; ++i)
        pi[i] = std::pow(rho, double(i) - 1.0) * t0 * pi0;
    return make_steady_state(std::move(pi));
}

SteadyState stationary_birth_death(const std::vector<double>& up,
                                   const std::vector<double>& down) {
    if (up.size() != down.size())
        throw ModelError("stationary_birth_death: up/down size mismatch");
    const std::size_t B = up.size();
    const std::size_t n = B + 1;
    if (B == 0) return make_steady_state({1.0});

    // Dense column-stochastic P; trivial at n <= 11.
    std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
    for (std::size_t q = 0; q < n; ++q) {
        double stay = 1.0;
        if (q < B) { P[q + 1][q] = up[q]; stay -= up[q]; }
        if (q > 0) { P[q - 1][q] = down[q - 1]; stay -= down[q - 1]; }
        P[q][q] = stay;
    }

    // Solve (P - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    std::vector<std::vector<double>> A(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r + 1 < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) A[r][c] = P[r][c] - (r == c ? 1.0 : 0.0);
    }
    for (std::size_t c = 0; c < n; ++c) A[n - 1][c] = 1.0;
    A[n - 1][n] = 1.0;

    bool singular = false;
    for (std::size_t col = 0; col < n && !singular; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-13) { singular = true; break; }
        std::swap(A[col], A[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = A[r][col] / A[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) A[r][c] -= f * A[col][c];
        }
    }

    std::vector<double> pi(n, 0.0);
    if (!singular) {
        for (std::size_t r = 0; r < n; ++r) pi[r] = A[r][n] / A[r][r];
        for (double& v : pi)
            if (v < 0.0 && v > -1e-12) v = 0.0;
    } else {
        // Reducible chain: Cesaro-averaged power iteration from the empty queue.
        std::vector<double> x(n, 0.0), acc(n, 0.0), next(n, 0.0);
        x[0] = 1.0;
        const std::size_t iters = 20000;
        for (std::size_t it = 0; it < iters; ++it) {
            for (std::size_t r = 0; r < n; ++r) {
                double s = 0.0;
                for (std::size_t c = 0; c < n; ++c) s += P[r][c] * x[c];
                next[r] = s;
            }
            x.swap(next);
            for (std::size_t r = 0; r < n; ++r) acc[r] += x[r];
        }
        for (std::size_t r = 0; r < n; ++r) pi[r] = acc[r] / double(iters);
    }
    return make_steady_state(std::move(pi));
}

SteadyState steady_state_numeric(const ChainCoefficients& co, std::size_t B) {
    if (B == 0) return make_steady_state({1.0});
    std::vector<double> up(B, co.b2), down(B, co.b0);
    up[0] = co.a1;
    return stationary_birth_death(up, down);
}

}
