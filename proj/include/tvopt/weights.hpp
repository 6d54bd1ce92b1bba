#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tvopt/types.hpp"

namespace tvopt {

// Moving-average weight schemes. The alpha scheme reproduces the current
// value of a smooth trajectory from its window (sum alpha_i = 1,
// sum i*alpha_i = 0); the beta scheme recovers its time derivative
// (sum beta_j = 0, sum j*beta_j = -1/h). Both are the minimum-l2-norm
// weights under their moment constraints, which minimizes the noise
// variance of the combination.

struct AlphaScheme {
    std::size_t m = 0;
    Vec weights;

    double constraint_residual_sum() const;    // |sum w - 1|
    double constraint_residual_moment() const; // |sum i*w|
};

struct BetaScheme {
    std::size_t p = 0;
    double h = 0.0;
    Vec weights;

    double constraint_residual_sum() const;    // |sum w|
    double constraint_residual_moment() const; // |sum j*w + 1/h|
};

/// Closed-form alpha weights: a_i = 2(2m-1-3i) / (m(m+1)), m >= 1.
AlphaScheme alpha_weights(std::size_t m);

/// Closed-form beta weights: b_j = 6(p-1-2j) / (p(p^2-1)h), p >= 2.
/// Throws InvalidWindow for p < 2 (the constraint pair is infeasible).
BetaScheme beta_weights(std::size_t p, double h);

/// Minimum-l2-norm weights w of length `window` satisfying the moment
/// constraints sum_i i^power * w_i = target for each (power, target).
/// Solved through the KKT system of the equality-constrained QP with a
/// pivoted Gaussian elimination, an algebraic route independent of the
/// closed forms above; serves both as their test oracle and as the
/// warm-up weight generator for short histories.
/// Throws InfeasibleConstraints when the moment Gram matrix is singular.
Vec min_norm_weights_oracle(std::size_t window,
                            const std::vector<std::pair<int, double>>& constraint_moments);

/// Window length for the alpha scheme: max(1, round(c_m * h^(-4/5))).
std::size_t window_m(double h, double c_m);

/// Window length for the beta scheme: max(2, round(c_p * h^(-3/4))).
std::size_t window_p(double h, double c_p);

class ObservationBuffer;

/// sum_i weights[i] * y_{t - i h} over the buffer's most recent rows.
/// Throws InsufficientHistory when the buffer holds fewer rows than
/// weights (callers implement the warm-up policy above this).
Vec weighted_combination(const ObservationBuffer& buffer, const Vec& weights);

}  // namespace tvopt
