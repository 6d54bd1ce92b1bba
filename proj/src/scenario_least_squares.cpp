#include "tvopt/scenario_least_squares.hpp"

#include <algorithm>
#include <cmath>

#include "tvopt/errors.hpp"
#include "tvopt/linalg.hpp"

namespace tvopt {

LeastSquaresScenario::LeastSquaresScenario(double h, Mat design, Params params)
    : Scenario(h),
      design_(std::move(design)),
      params_(std::move(params)),
      tau_(std::sqrt(params_.noise_var)),
      alpha_(alpha_weights(window_m(h, params_.c_m))),
      beta_(beta_weights(window_p(h, params_.c_p), h)) {
    if (design_.rows < design_.cols)
        throw ConfigError("LeastSquaresScenario: need n >= d");
    if (params_.trajectory.dim() != design_.cols)
        throw ConfigError("LeastSquaresScenario: trajectory dim != d");
    if (params_.noise_var < 0.0)
        throw ConfigError("LeastSquaresScenario: noise_var must be >= 0");

    hessian_ = gram(design_);
    const double inv_n = 1.0 / static_cast<double>(design_.rows);
    for (double& x : hessian_.data) x *= inv_n;

    // Columns in general position: the Gram matrix must factorize.
    SolveDiag diag;
    Vec probe(design_.cols, 1.0);
    solve_spd(hessian_, probe, &diag);
    if (diag.ridge > 0.0)
        throw ConfigError("LeastSquaresScenario: X^T X is numerically singular");
}

std::size_t LeastSquaresScenario::history_capacity() const {
    return std::max(alpha_.m, beta_.p);
}

std::int64_t LeastSquaresScenario::warmup_steps() const {
    return static_cast<std::int64_t>(history_capacity()) - 1;
}

Vec LeastSquaresScenario::observe(std::int64_t k, RngStream& rng) const {
    Vec y = matvec(design_, true_theta(time_at(k)));
    if (tau_ > 0.0)
        for (double& v : y) v += tau_ * rng.normal();
    return y;
}

Vec LeastSquaresScenario::gradient_estimate(const Vec& theta,
                                            const ObservationBuffer& buffer) const {
    const std::size_t m_eff = std::min<std::size_t>(alpha_.m, buffer.size());
    Vec yhat;
    if (m_eff == alpha_.m) {
        yhat = weighted_combination(buffer, alpha_.weights);
    } else {
        // Warm-up: largest feasible window, weights from the KKT oracle.
        const Vec w = m_eff == 1 ? Vec{1.0}
                                 : min_norm_weights_oracle(m_eff, {{0, 1.0}, {1, 0.0}});
        yhat = weighted_combination(buffer, w);
    }
    Vec residual = matvec(design_, theta);
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= yhat[i];
    Vec grad = matvec_t(design_, residual);
    const double inv_n = 1.0 / static_cast<double>(design_.rows);
    for (double& g : grad) g *= inv_n;
    return grad;
}

Vec LeastSquaresScenario::cross_estimate(const ObservationBuffer& buffer) const {
    const std::size_t p_eff = std::min<std::size_t>(beta_.p, buffer.size());
    if (p_eff < 2) return Vec(dim(), 0.0);  // degenerate to GD for this step
    Vec slope;
    if (p_eff == beta_.p) {
        slope = weighted_combination(buffer, beta_.weights);
    } else {
        const Vec w = min_norm_weights_oracle(p_eff, {{0, 0.0}, {1, -1.0 / step()}});
        slope = weighted_combination(buffer, w);
    }
    Vec cross = matvec_t(design_, slope);
    const double scale = -1.0 / static_cast<double>(design_.rows);
    for (double& c : cross) c *= scale;
    return cross;
}

DerivativeBundle LeastSquaresScenario::estimate_bundle(
    const Vec& theta, std::int64_t /*k*/, const ObservationBuffer& buffer) const {
    return DerivativeBundle(gradient_estimate(theta, buffer), hessian_,
                            cross_estimate(buffer));
}

DerivativeBundle LeastSquaresScenario::exact_bundle(const Vec& theta,
                                                    double t) const {
    Vec diff = theta;
    const Vec star = true_theta(t);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= star[i];
    Vec grad = matvec(hessian_, diff);
    Vec cross = matvec(hessian_, params_.trajectory.velocity(t));
    for (double& c : cross) c = -c;
    return DerivativeBundle(std::move(grad), hessian_, std::move(cross));
}

double LeastSquaresScenario::exact_risk(const Vec& theta, double t) const {
    Vec diff = theta;
    const Vec star = true_theta(t);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= star[i];
    const Vec xd = matvec(design_, diff);
    return 0.5 * dot(xd, xd) / static_cast<double>(design_.rows) +
           0.5 * params_.noise_var;
}

Mat LeastSquaresScenario::random_design(std::size_t n, std::size_t d,
                                        RngStream& rng) {
    Mat x(n, d);
    for (double& v : x.data) v = rng.normal();
    return x;
}

}  // namespace tvopt
