#include "tvopt/scenario_performative.hpp"

#include <cmath>
#include <numbers>

#include "tvopt/errors.hpp"

namespace tvopt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PerformativeScenario::PerformativeScenario(double h, Params params)
    : Scenario(h), params_(params) {
    if (!(params_.sigma > 0.0))
        throw ConfigError("PerformativeScenario: sigma must be > 0");
    if (params_.n_samples < 1)
        throw ConfigError("PerformativeScenario: n_samples must be >= 1");
    const double lo = params_.eps_base - std::abs(params_.eps_amp);
    const double hi = params_.eps_base + std::abs(params_.eps_amp);
    if (!(lo > 0.0 && hi < 1.0))
        throw ConfigError("PerformativeScenario: eps(t) must stay in (0, 1)");
}

double PerformativeScenario::mu(double t) const {
    return params_.mu_amp * std::sin(kTwoPi * t);
}

double PerformativeScenario::mu_dot(double t) const {
    return params_.mu_amp * kTwoPi * std::cos(kTwoPi * t);
}

double PerformativeScenario::eps(double t) const {
    return params_.eps_base + params_.eps_amp * std::sin(kTwoPi * t);
}

double PerformativeScenario::eps_dot(double t) const {
    return params_.eps_amp * kTwoPi * std::cos(kTwoPi * t);
}

double PerformativeScenario::true_theta_scalar(double t) const {
    return mu(t) / (1.0 - eps(t));
}

Vec PerformativeScenario::observe(std::int64_t k, RngStream& rng) const {
    const double t = time_at(k);
    return sample_at({true_theta_scalar(t)}, t, params_.n_samples, rng);
}

Vec PerformativeScenario::sample_at(const Vec& theta, double t, std::size_t n,
                                    RngStream& rng) const {
    const double mean = mu(t) + eps(t) * theta[0];
    Vec z(n);
    for (double& v : z) v = rng.normal(mean, params_.sigma);
    return z;
}

double PerformativeScenario::score_theta(double z, double theta, double t) const {
    const double s2 = params_.sigma * params_.sigma;
    return eps(t) * (z - mu(t) - eps(t) * theta) / s2;
}

double PerformativeScenario::score_theta_theta(double z, double theta,
                                               double t) const {
    const double s2 = params_.sigma * params_.sigma;
    const double e = eps(t);
    const double r = (z - mu(t) - e * theta) / s2;
    return e * e * (r * r - 1.0 / s2);
}

double PerformativeScenario::score_t(double z, double theta, double t) const {
    const double s2 = params_.sigma * params_.sigma;
    return (mu_dot(t) + eps_dot(t) * theta) * (z - mu(t) - eps(t) * theta) / s2;
}

double PerformativeScenario::score_theta_t(double z, double theta, double t) const {
    const double s2 = params_.sigma * params_.sigma;
    const double e = eps(t);
    const double r = (z - mu(t) - e * theta) / s2;
    return eps_dot(t) * r + e * (mu_dot(t) + eps_dot(t) * theta) * (r * r - 1.0 / s2);
}

double PerformativeScenario::density(double z, double theta, double t) const {
    const double s = params_.sigma;
    const double d = (z - mu(t) - eps(t) * theta) / s;
    return std::exp(-0.5 * d * d) / (s * std::sqrt(kTwoPi));
}

DerivativeBundle PerformativeScenario::bundle_from_samples(
    const Vec& theta, std::span<const double> samples, double t) const {
    if (samples.empty())
        throw EmptySample("bundle_from_samples: no samples at t = " + std::to_string(t));
    // Plug-in estimates of the score-ratio identities, in the symmetric
    // (theta - z) form: E[score_theta] = 0 makes it equal in expectation
    // to the simplified -E[Z * score] form, but the (theta - z) factor
    // cancels the mean of Z, which otherwise dominates the sample
    // variance whenever |mu + eps*theta| is large. Terms weighted by the
    // loss (1/2)(z - theta)^2 carry the loss's 1/2.
    const double th = theta[0];
    double mean_z = 0.0;
    double grad_term = 0.0;   // (z - th)^2 * score_theta
    double hess_term1 = 0.0;  // (th - z) * score_theta
    double hess_term2 = 0.0;  // (z - th)^2 * score_theta_theta
    double cross_term1 = 0.0; // (th - z) * score_t
    double cross_term2 = 0.0; // (z - th)^2 * score_theta_t
    for (double z : samples) {
        const double d2 = (z - th) * (z - th);
        mean_z += z;
        grad_term += d2 * score_theta(z, th, t);
        hess_term1 += (th - z) * score_theta(z, th, t);
        hess_term2 += d2 * score_theta_theta(z, th, t);
        cross_term1 += (th - z) * score_t(z, th, t);
        cross_term2 += d2 * score_theta_t(z, th, t);
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    mean_z *= inv_n;
    grad_term *= inv_n;
    hess_term1 *= inv_n;
    hess_term2 *= inv_n;
    cross_term1 *= inv_n;
    cross_term2 *= inv_n;

    Mat hess(1, 1);
    hess(0, 0) = 1.0 + 2.0 * hess_term1 + 0.5 * hess_term2;
    return DerivativeBundle({-mean_z + th + 0.5 * grad_term}, std::move(hess),
                            {cross_term1 + 0.5 * cross_term2});
}

DerivativeBundle PerformativeScenario::estimate_bundle(
    const Vec& theta, std::int64_t k, const ObservationBuffer& buffer) const {
    if (buffer.empty())
        throw EmptySample("estimate_bundle: no observation pushed for this step");
    return bundle_from_samples(
        theta, std::span<const double>(buffer.row(0), buffer.dim()), time_at(k));
}

DerivativeBundle PerformativeScenario::exact_bundle(const Vec& theta,
                                                    double t) const {
    const double e = eps(t);
    const double gap = mu(t) - (1.0 - e) * theta[0];
    Mat hess(1, 1);
    hess(0, 0) = (1.0 - e) * (1.0 - e);
    const double cross =
        eps_dot(t) * gap - (1.0 - e) * (mu_dot(t) + eps_dot(t) * theta[0]);
    return DerivativeBundle({-(1.0 - e) * gap}, std::move(hess), {cross});
}

double PerformativeScenario::exact_risk(const Vec& theta, double t) const {
    const double gap = mu(t) + eps(t) * theta[0] - theta[0];
    return 0.5 * (gap * gap + params_.sigma * params_.sigma);
}

}  // namespace tvopt
