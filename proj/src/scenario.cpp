#include "tvopt/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tvopt/errors.hpp"

namespace tvopt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Trajectory Trajectory::circle() { return Trajectory(Kind::Circle, 0.0, 0.0); }
Trajectory Trajectory::linear(double coeff) { return Trajectory(Kind::Affine, 0.0, coeff); }
Trajectory Trajectory::affine(double a, double b) { return Trajectory(Kind::Affine, a, b); }
Trajectory Trajectory::sinusoid(double coeff) { return Trajectory(Kind::Sinusoid, coeff, 0.0); }
Trajectory Trajectory::fixed_point(double x, double y) {
    return Trajectory(Kind::FixedPoint, x, y);
}

std::size_t Trajectory::dim() const {
    return kind_ == Kind::Circle || kind_ == Kind::FixedPoint ? 2 : 1;
}

Vec Trajectory::value(double t) const {
    switch (kind_) {
        case Kind::Circle:
            return {std::sin(kTwoPi * t), std::cos(kTwoPi * t)};
        case Kind::Affine:
            return {a_ + b_ * t};
        case Kind::Sinusoid:
            return {a_ * std::sin(kTwoPi * t)};
        case Kind::FixedPoint:
            return {a_, b_};
    }
    return {};
}

Vec Trajectory::velocity(double t) const {
    switch (kind_) {
        case Kind::Circle:
            return {kTwoPi * std::cos(kTwoPi * t), -kTwoPi * std::sin(kTwoPi * t)};
        case Kind::Affine:
            return {b_};
        case Kind::Sinusoid:
            return {a_ * kTwoPi * std::cos(kTwoPi * t)};
        case Kind::FixedPoint:
            return {0.0, 0.0};
    }
    return {};
}

Scenario::Scenario(double h) : h_(h) {
    if (!(h > 0.0)) throw ConfigError("Scenario: h must be > 0");
}

DerivativeBundle Scenario::exact_bundle(const Vec&, double) const {
    throw std::logic_error("exact_bundle: not available for this scenario");
}

double Scenario::exact_risk(const Vec&, double) const {
    throw std::logic_error("exact_risk: not available for this scenario");
}

QuadraticDriftScenario::QuadraticDriftScenario(double h, double mu_strong,
                                               Trajectory trajectory)
    : Scenario(h), mu_(mu_strong), trajectory_(trajectory) {
    if (!(mu_ > 0.0))
        throw ConfigError("QuadraticDriftScenario: mu_strong must be > 0");
    if (trajectory_.dim() != 1)
        throw ConfigError("QuadraticDriftScenario: trajectory must be scalar");
}

Vec QuadraticDriftScenario::observe(std::int64_t, RngStream&) const {
    return {};  // noise-free scenario carries no observations
}

DerivativeBundle QuadraticDriftScenario::estimate_bundle(
    const Vec& theta, std::int64_t k, const ObservationBuffer&) const {
    return exact_bundle(theta, time_at(k));
}

DerivativeBundle QuadraticDriftScenario::exact_bundle(const Vec& theta,
                                                      double t) const {
    const double star = trajectory_.value(t)[0];
    const double vel = trajectory_.velocity(t)[0];
    Mat hess(1, 1);
    hess(0, 0) = mu_;
    return DerivativeBundle({mu_ * (theta[0] - star)}, std::move(hess),
                            {-mu_ * vel});
}

double QuadraticDriftScenario::exact_risk(const Vec& theta, double t) const {
    const double d = theta[0] - trajectory_.value(t)[0];
    return 0.5 * mu_ * d * d;
}

}  // namespace tvopt
