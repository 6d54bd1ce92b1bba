#include "tvopt/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "tvopt/buffer.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/kernels.hpp"

namespace tvopt {

namespace {

double moment(const Vec& w, int power) {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        acc += std::pow(static_cast<double>(i), power) * w[i];
    return acc;
}

std::size_t round_half_up(double x) {
    return static_cast<std::size_t>(std::llround(x));
}

}  // namespace

double AlphaScheme::constraint_residual_sum() const {
    return std::abs(moment(weights, 0) - 1.0);
}

double AlphaScheme::constraint_residual_moment() const {
    return std::abs(moment(weights, 1));
}

double BetaScheme::constraint_residual_sum() const {
    return std::abs(moment(weights, 0));
}

double BetaScheme::constraint_residual_moment() const {
    return std::abs(moment(weights, 1) + 1.0 / h);
}

AlphaScheme alpha_weights(std::size_t m) {
    if (m < 1) throw InvalidWindow("alpha_weights: m must be >= 1");
    AlphaScheme s;
    s.m = m;
    s.weights.resize(m);
    const double denom = static_cast<double>(m) * static_cast<double>(m + 1);
    for (std::size_t i = 0; i < m; ++i)
        s.weights[i] = 2.0 * (2.0 * static_cast<double>(m) - 1.0 - 3.0 * static_cast<double>(i)) / denom;
    return s;
}

BetaScheme beta_weights(std::size_t p, double h) {
    if (p < 2)
        throw InvalidWindow("beta_weights: p must be >= 2 (got " + std::to_string(p) + ")");
    if (!(h > 0.0)) throw InvalidWindow("beta_weights: h must be > 0");
    BetaScheme s;
    s.p = p;
    s.h = h;
    s.weights.resize(p);
    const double pd = static_cast<double>(p);
    const double denom = pd * (pd * pd - 1.0);
    // Divide by h last: the h-free factor is an exact small rational for
    // modest p, so e.g. p = 2, h = 0.1 yields exactly (10, -10).
    for (std::size_t j = 0; j < p; ++j)
        s.weights[j] = 6.0 * (pd - 1.0 - 2.0 * static_cast<double>(j)) / denom / h;
    return s;
}

Vec min_norm_weights_oracle(std::size_t window,
                            const std::vector<std::pair<int, double>>& constraint_moments) {
    const std::size_t c = constraint_moments.size();
    if (c == 0) return Vec(window, 0.0);
    if (window < c)
        throw InfeasibleConstraints("min_norm_weights_oracle: window " +
                                    std::to_string(window) + " < " +
                                    std::to_string(c) + " constraints");

    // Constraint matrix A (c x window) with A[r][i] = i^power_r. The
    // minimum-norm solution is w = A^T (A A^T)^{-1} target; we solve the
    // small Gram system by Gaussian elimination with partial pivoting.
    std::vector<Vec> a(c, Vec(window));
    Vec target(c);
    for (std::size_t r = 0; r < c; ++r) {
        const int power = constraint_moments[r].first;
        target[r] = constraint_moments[r].second;
        for (std::size_t i = 0; i < window; ++i)
            a[r][i] = std::pow(static_cast<double>(i), power);
    }

    std::vector<Vec> g(c, Vec(c));
    for (std::size_t r = 0; r < c; ++r)
        for (std::size_t s = 0; s < c; ++s)
            g[r][s] = kernels::detail::dot_scalar(a[r].data(), a[s].data(), window);

    // Gaussian elimination with partial pivoting on [G | target].
    std::vector<std::size_t> perm(c);
    for (std::size_t i = 0; i < c; ++i) perm[i] = i;
    for (std::size_t col = 0; col < c; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < c; ++r)
            if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
        std::swap(g[col], g[piv]);
        std::swap(target[col], target[piv]);
        const double scale_ref = std::abs(g[col][col]);
        if (!(scale_ref > 0.0) || !std::isfinite(scale_ref))
            throw InfeasibleConstraints(
                "min_norm_weights_oracle: singular moment matrix");
        for (std::size_t r = col + 1; r < c; ++r) {
            const double f = g[r][col] / g[col][col];
            for (std::size_t s = col; s < c; ++s) g[r][s] -= f * g[col][s];
            target[r] -= f * target[col];
        }
    }
    Vec lambda(c);
    for (std::size_t ii = c; ii-- > 0;) {
        double s = target[ii];
        for (std::size_t jj = ii + 1; jj < c; ++jj) s -= g[ii][jj] * lambda[jj];
        lambda[ii] = s / g[ii][ii];
    }

    Vec w(window, 0.0);
    for (std::size_t r = 0; r < c; ++r)
        kernels::detail::axpy_scalar(w.data(), lambda[r], a[r].data(), window);
    return w;
}

std::size_t window_m(double h, double c_m) {
    if (!(h > 0.0) || !(c_m > 0.0))
        throw InvalidWindow("window_m: h and c_m must be > 0");
    const double m = c_m * std::pow(h, -0.8);
    return std::max<std::size_t>(1, round_half_up(m));
}

std::size_t window_p(double h, double c_p) {
    if (!(h > 0.0) || !(c_p > 0.0))
        throw InvalidWindow("window_p: h and c_p must be > 0");
    const double p = c_p * std::pow(h, -0.75);
    return std::max<std::size_t>(2, round_half_up(p));
}

Vec weighted_combination(const ObservationBuffer& buffer, const Vec& weights) {
    if (buffer.size() < weights.size())
        throw InsufficientHistory(buffer.size(), weights.size());
    std::vector<const double*> rows(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) rows[i] = buffer.row(i);
    Vec out(buffer.dim(), 0.0);
    kernels::weighted_sum_rows(out.data(), rows.data(), weights.data(),
                               weights.size(), buffer.dim());
    return out;
}

}  // namespace tvopt
