#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relaycache/phy.hpp"

namespace relaycache {

struct TrafficParams {
    double q1 = 0.0;     // U1 attempt probability
    double qR = 0.0;     // relay available to serve D
    double alpha = 0.0;  // data-center availability
    double qU = 0.0;     // U2 external request probability
    double ph = 0.0;     // relay cache hit probability

    void validate() const;  // each field in [0,1]; throws ConfigError
};

struct ChainCoefficients {
    double a1 = 0.0;  // P(Q: 0 -> 1)
    double b0 = 0.0;  // P(Q: q -> q-1), q > 0
    double b1 = 1.0;  // P(Q unchanged), defined as 1 - b0 - b2
    double b2 = 0.0;  // P(Q: q -> q+1), q > 0
    std::optional<double> rho;  // b2/b0, present iff b0 > 0
    std::optional<double> t0;   // a1/b0, present iff b0 > 0
};

struct SteadyState {
    std::vector<double> pi;      // size B+1
    double prob_nonempty = 0.0;  // 1 - pi[0]
    double prob_interior = 0.0;  // sum pi[1..B-1]
    double prob_full = 0.0;      // pi[B]
};

// Fills the aggregate fields from pi.
SteadyState make_steady_state(std::vector<double> pi);

// Verbatim term-by-term evaluation of the queue transition coefficients.
// Throws ModelError if b0 + b2 > 1 beyond rounding noise (1e-12).
ChainCoefficients coefficients(const LinkProbs& lp, const TrafficParams& t);
ChainCoefficients coefficients(const LinkBudget& budget, const TrafficParams& t);

// pi_i = rho^(i-1) t0 pi_0, pi_0 = [1 + t0 (1-rho^B)/(1-rho)]^-1.
// The geometric factor is replaced by its limit B when |1-rho| < 1e-9.
// B = 0 returns the degenerate distribution [1].
// Throws ModelError when b0 = 0 and B >= 1 (use steady_state_numeric).
SteadyState steady_state_closed(const ChainCoefficients& co, std::size_t B);

// Linear solve of (P - I) pi = 0 with sum(pi) = 1 for the tridiagonal
// column-stochastic chain; residual ||P pi - pi||_inf <= 1e-12.
SteadyState steady_state_numeric(const ChainCoefficients& co, std::size_t B);

// Stationary distribution of a general finite birth-death chain:
// up[q] = P(q -> q+1) for q = 0..B-1, down[q] = P(q+1 -> q) for q = 0..B-1.
// Gaussian elimination with the normalization row; falls back to a
// Cesaro-averaged power iteration from state 0 if the system is singular
// (reducible chains keep the convention that the queue starts empty).
SteadyState stationary_birth_death(const std::vector<double>& up,
                                   const std::vector<double>& down);

}
