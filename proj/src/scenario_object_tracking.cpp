#include "tvopt/scenario_object_tracking.hpp"

#include <algorithm>
#include <cmath>

#include "tvopt/errors.hpp"
#include "tvopt/kernels.hpp"
#include "tvopt/linalg.hpp"

namespace tvopt {

namespace {
double id_f(double x) { return x; }
double id_fp(double) { return 1.0; }
double id_fpp(double) { return 0.0; }
}  // namespace

LinkFunction LinkFunction::identity() {
    return LinkFunction{id_f, id_fp, id_fpp, true};
}

ObjectTrackingScenario::ObjectTrackingScenario(double h, std::vector<double> sensor_x,
                                               std::vector<double> sensor_y,
                                               Params params)
    : Scenario(h),
      xs_(std::move(sensor_x)),
      ys_(std::move(sensor_y)),
      params_(std::move(params)),
      tau_(std::sqrt(params_.noise_var)),
      alpha_(alpha_weights(window_m(h, params_.c_m))),
      beta_(beta_weights(window_p(h, params_.c_p), h)) {
    if (xs_.size() != ys_.size())
        throw ConfigError("ObjectTrackingScenario: sensor coordinate size mismatch");
    if (xs_.size() < 3)
        throw ConfigError("ObjectTrackingScenario: need at least dim+1 = 3 sensors");
    if (params_.noise_var < 0.0)
        throw ConfigError("ObjectTrackingScenario: noise_var must be >= 0");
    if (params_.trajectory.dim() != 2)
        throw ConfigError("ObjectTrackingScenario: trajectory must be planar");

    const std::size_t n = xs_.size();
    sum_x_ = kernels::sum(xs_.data(), n);
    sum_y_ = kernels::sum(ys_.data(), n);
    sum_xx_ = kernels::dot(xs_.data(), xs_.data(), n);
    sum_yy_ = kernels::dot(ys_.data(), ys_.data(), n);
    sum_xy_ = kernels::dot(xs_.data(), ys_.data(), n);

    // Identifiability: sensors must not be collinear, i.e. the centered
    // second-moment matrix has full rank.
    const double nd = static_cast<double>(n);
    const double cxx = sum_xx_ - sum_x_ * sum_x_ / nd;
    const double cyy = sum_yy_ - sum_y_ * sum_y_ / nd;
    const double cxy = sum_xy_ - sum_x_ * sum_y_ / nd;
    if (cxx * cyy - cxy * cxy <= 1e-12 * nd * nd)
        throw ConfigError("ObjectTrackingScenario: sensors are collinear");
}

ObjectTrackingScenario ObjectTrackingScenario::grid_field(double h, std::size_t side,
                                                          Params params) {
    if (side < 2) throw ConfigError("ObjectTrackingScenario: grid side must be >= 2");
    std::vector<double> xs, ys;
    xs.reserve(side * side);
    ys.reserve(side * side);
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            xs.push_back(-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(side - 1));
            ys.push_back(-1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(side - 1));
        }
    }
    return ObjectTrackingScenario(h, std::move(xs), std::move(ys), std::move(params));
}

std::size_t ObjectTrackingScenario::history_capacity() const {
    return std::max(alpha_.m, beta_.p);
}

std::int64_t ObjectTrackingScenario::warmup_steps() const {
    return static_cast<std::int64_t>(history_capacity()) - 1;
}

Vec ObjectTrackingScenario::observe(std::int64_t k, RngStream& rng) const {
    const Vec star = true_theta(time_at(k));
    const std::size_t n = xs_.size();
    Vec y(n);
    kernels::squared_dist_2d(y.data(), xs_.data(), ys_.data(), star[0], star[1], n);
    if (params_.link.is_identity) {
        if (tau_ > 0.0)
            for (double& v : y) v += tau_ * rng.normal();
    } else {
        for (double& v : y) {
            v = params_.link.f(v);
            if (tau_ > 0.0) v += tau_ * rng.normal();
        }
    }
    return y;
}

Vec ObjectTrackingScenario::level_estimate(const ObservationBuffer& buffer) const {
    const std::size_t m_eff = std::min<std::size_t>(alpha_.m, buffer.size());
    if (m_eff == alpha_.m) return weighted_combination(buffer, alpha_.weights);
    const Vec w = m_eff == 1 ? Vec{1.0}
                             : min_norm_weights_oracle(m_eff, {{0, 1.0}, {1, 0.0}});
    return weighted_combination(buffer, w);
}

Vec ObjectTrackingScenario::slope_estimate(const ObservationBuffer& buffer) const {
    const std::size_t p_eff = std::min<std::size_t>(beta_.p, buffer.size());
    if (p_eff < 2) return Vec(obs_dim(), 0.0);
    if (p_eff == beta_.p) return weighted_combination(buffer, beta_.weights);
    const Vec w = min_norm_weights_oracle(p_eff, {{0, 0.0}, {1, -1.0 / step()}});
    return weighted_combination(buffer, w);
}

DerivativeBundle ObjectTrackingScenario::assemble(const Vec& theta, const Vec& levels,
                                                  const Vec& slopes) const {
    const std::size_t n = xs_.size();
    const double inv_n = 1.0 / static_cast<double>(n);
    Vec grad(2, 0.0);
    Mat hess(2, 2);
    Vec cross(2, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double ux = theta[0] - xs_[i];
        const double uy = theta[1] - ys_[i];
        const double q = ux * ux + uy * uy;
        const double fv = params_.link.f(q);
        const double fp = params_.link.fp(q);
        const double fpp = params_.link.fpp(q);
        const double r = fv - levels[i];

        const double gs = 2.0 * inv_n * r * fp;
        grad[0] += gs * ux;
        grad[1] += gs * uy;

        const double outer = 4.0 * inv_n * (r * fpp + fp * fp);
        hess(0, 0) += gs + outer * ux * ux;
        hess(1, 1) += gs + outer * uy * uy;
        hess(0, 1) += outer * ux * uy;

        const double cs = -2.0 * inv_n * fp * slopes[i];
        cross[0] += cs * ux;
        cross[1] += cs * uy;
    }
    hess(1, 0) = hess(0, 1);
    return DerivativeBundle(std::move(grad), std::move(hess), std::move(cross));
}

DerivativeBundle ObjectTrackingScenario::assemble_identity(const Vec& theta,
                                                           const Vec& levels,
                                                           const Vec& slopes) const {
    const std::size_t n = xs_.size();
    const double nd = static_cast<double>(n);
    const double inv_n = 1.0 / nd;

    Vec q(n);
    kernels::squared_dist_2d(q.data(), xs_.data(), ys_.data(), theta[0], theta[1], n);
    Vec r(n);
    kernels::sub(r.data(), q.data(), levels.data(), n);

    const double sr = kernels::sum(r.data(), n);
    const double srx = kernels::dot(r.data(), xs_.data(), n);
    const double sry = kernels::dot(r.data(), ys_.data(), n);
    Vec grad = {2.0 * inv_n * (sr * theta[0] - srx),
                2.0 * inv_n * (sr * theta[1] - sry)};

    // 4/n * sum (theta - X_i)(theta - X_i)^T from the constant sensor
    // moments, plus the residual term on the diagonal (f'' = 0 drops the
    // middle term).
    Mat hess(2, 2);
    const double sxx = nd * theta[0] * theta[0] - 2.0 * theta[0] * sum_x_ + sum_xx_;
    const double syy = nd * theta[1] * theta[1] - 2.0 * theta[1] * sum_y_ + sum_yy_;
    const double sxy = nd * theta[0] * theta[1] - theta[0] * sum_y_ -
                       theta[1] * sum_x_ + sum_xy_;
    hess(0, 0) = 2.0 * inv_n * sr + 4.0 * inv_n * sxx;
    hess(1, 1) = 2.0 * inv_n * sr + 4.0 * inv_n * syy;
    hess(0, 1) = 4.0 * inv_n * sxy;
    hess(1, 0) = hess(0, 1);

    const double sb = kernels::sum(slopes.data(), n);
    const double sbx = kernels::dot(slopes.data(), xs_.data(), n);
    const double sby = kernels::dot(slopes.data(), ys_.data(), n);
    Vec cross = {-2.0 * inv_n * (sb * theta[0] - sbx),
                 -2.0 * inv_n * (sb * theta[1] - sby)};

    return DerivativeBundle(std::move(grad), std::move(hess), std::move(cross));
}

DerivativeBundle ObjectTrackingScenario::estimate_bundle(
    const Vec& theta, std::int64_t /*k*/, const ObservationBuffer& buffer) const {
    const Vec levels = level_estimate(buffer);
    const Vec slopes = slope_estimate(buffer);
    return params_.link.is_identity ? assemble_identity(theta, levels, slopes)
                                    : assemble(theta, levels, slopes);
}

DerivativeBundle ObjectTrackingScenario::exact_bundle(const Vec& theta,
                                                      double t) const {
    const Vec star = true_theta(t);
    const Vec vel = params_.trajectory.velocity(t);
    const std::size_t n = xs_.size();
    Vec levels(n), slopes(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = star[0] - xs_[i];
        const double dy = star[1] - ys_[i];
        const double qs = dx * dx + dy * dy;
        levels[i] = params_.link.f(qs);
        slopes[i] = params_.link.fp(qs) * 2.0 * (dx * vel[0] + dy * vel[1]);
    }
    return assemble(theta, levels, slopes);
}

double ObjectTrackingScenario::exact_risk(const Vec& theta, double t) const {
    const Vec star = true_theta(t);
    const std::size_t n = xs_.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ux = theta[0] - xs_[i];
        const double uy = theta[1] - ys_[i];
        const double sx = star[0] - xs_[i];
        const double sy = star[1] - ys_[i];
        const double d = params_.link.f(ux * ux + uy * uy) -
                         params_.link.f(sx * sx + sy * sy);
        acc += d * d;
    }
    return 0.5 * params_.noise_var + 0.5 * acc / static_cast<double>(n);
}

}  // namespace tvopt
