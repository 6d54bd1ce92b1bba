#pragma once

#include <cstdint>
#include <memory>

#include "tvopt/buffer.hpp"
#include "tvopt/rng.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

/// Smooth parametric trajectory of the moving optimum.
class Trajectory {
  public:
    /// (sin 2*pi*t, cos 2*pi*t) in R^2.
    static Trajectory circle();
    /// coeff * t in R.
    static Trajectory linear(double coeff);
    /// a + b*t in R.
    static Trajectory affine(double a, double b);
    /// coeff * sin(2*pi*t) in R.
    static Trajectory sinusoid(double coeff);
    /// Constant (x, y) in R^2.
    static Trajectory fixed_point(double x, double y);

    std::size_t dim() const;
    Vec value(double t) const;
    Vec velocity(double t) const;

  private:
    enum class Kind { Circle, Affine, Sinusoid, FixedPoint };
    Trajectory(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
    Kind kind_;
    double a_;
    double b_;
};

/// A pluggable time-varying problem: the true moving optimum, a sampler
/// for the per-step observations, and derivative estimators over the
/// grid {k*h}. Instances are immutable after construction; observe()
/// takes the caller's RngStream so concurrent replicates never share
/// generator state.
class Scenario {
  public:
    virtual ~Scenario() = default;

    virtual const char* name() const = 0;
    virtual std::size_t dim() const = 0;

    /// Length of one observation vector (0 if the scenario has none).
    virtual std::size_t obs_dim() const = 0;

    /// Rows of history the run loop must retain for estimate_bundle.
    virtual std::size_t history_capacity() const { return 1; }

    /// Steps until every moving-average window is at full length.
    virtual std::int64_t warmup_steps() const { return 0; }

    double step() const { return h_; }
    double time_at(std::int64_t k) const { return static_cast<double>(k) * h_; }

    virtual Vec true_theta(double t) const = 0;

    /// Observation at step k (time k*h).
    virtual Vec observe(std::int64_t k, RngStream& rng) const = 0;

    /// Estimated gradient/Hessian/cross at (theta, k*h) from the stored
    /// history. Implementations apply the warm-up policy: the largest
    /// feasible window is used while history is short, and the cross
    /// estimate is zero until the beta window has at least two rows.
    virtual DerivativeBundle estimate_bundle(const Vec& theta, std::int64_t k,
                                             const ObservationBuffer& buffer) const = 0;

    /// Closed-form derivatives, where they exist.
    virtual bool has_exact() const { return false; }
    virtual DerivativeBundle exact_bundle(const Vec& /*theta*/, double /*t*/) const;

    /// Closed-form risk value, where it exists; the finite-difference
    /// conformance tests differentiate this.
    virtual double exact_risk(const Vec& /*theta*/, double /*t*/) const;

  protected:
    explicit Scenario(double h);

  private:
    double h_;
};

/// Noise-free scalar quadratic risk (mu/2)(theta - traj(t))^2 with exact
/// derivatives at every point; the workhorse for rate checks and for the
/// gradient-descent lower-bound construction (linear drift t*coeff).
class QuadraticDriftScenario final : public Scenario {
  public:
    QuadraticDriftScenario(double h, double mu_strong, Trajectory trajectory);

    const char* name() const override { return "quadratic"; }
    std::size_t dim() const override { return 1; }
    std::size_t obs_dim() const override { return 0; }

    Vec true_theta(double t) const override { return trajectory_.value(t); }
    Vec observe(std::int64_t k, RngStream& rng) const override;
    DerivativeBundle estimate_bundle(const Vec& theta, std::int64_t k,
                                     const ObservationBuffer& buffer) const override;

    bool has_exact() const override { return true; }
    DerivativeBundle exact_bundle(const Vec& theta, double t) const override;
    double exact_risk(const Vec& theta, double t) const override;

    double mu_strong() const { return mu_; }

  private:
    double mu_;
    Trajectory trajectory_;
};

}  // namespace tvopt
