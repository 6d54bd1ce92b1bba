#pragma once

#include "tvopt/scenario.hpp"
#include "tvopt/weights.hpp"

namespace tvopt {

/// Monotone link applied to squared distances, with its first two
/// derivatives. Only the identity is exercised by the stock experiments,
/// but any analytic triple works.
struct LinkFunction {
    double (*f)(double);
    double (*fp)(double);
    double (*fpp)(double);
    bool is_identity = false;

    static LinkFunction identity();
};

/// Planar object tracking from a fixed sensor field: sensor i reports
/// Y_i = f(||X_i - theta*(t)||^2) + eps. The per-sensor level
/// f(||X_i - theta*||^2) is recovered with the alpha scheme and its time
/// derivative with the beta scheme; gradient, Hessian and cross
/// derivative of the risk are assembled from those estimates. The
/// estimated Hessian is not guaranteed positive definite far from the
/// optimum; the solver's ridge fallback covers that.
class ObjectTrackingScenario final : public Scenario {
  public:
    struct Params {
        double noise_var = 0.05;
        double c_m = 1.0;
        double c_p = 1.0;
        LinkFunction link = LinkFunction::identity();
        Trajectory trajectory = Trajectory::circle();
    };

    /// Sensors as (x, y) pairs; needs at least dim+1 = 3 in general position.
    ObjectTrackingScenario(double h, std::vector<double> sensor_x,
                           std::vector<double> sensor_y, Params params);

    /// side x side grid over [-1,1]^2 (the stock field is 11 x 11).
    static ObjectTrackingScenario grid_field(double h, std::size_t side,
                                             Params params);

    const char* name() const override { return "object-tracking"; }
    std::size_t dim() const override { return 2; }
    std::size_t obs_dim() const override { return xs_.size(); }
    std::size_t history_capacity() const override;
    std::int64_t warmup_steps() const override;

    Vec true_theta(double t) const override { return params_.trajectory.value(t); }
    Vec observe(std::int64_t k, RngStream& rng) const override;
    DerivativeBundle estimate_bundle(const Vec& theta, std::int64_t k,
                                     const ObservationBuffer& buffer) const override;

    bool has_exact() const override { return true; }
    DerivativeBundle exact_bundle(const Vec& theta, double t) const override;
    double exact_risk(const Vec& theta, double t) const override;

    std::size_t window_alpha() const { return alpha_.m; }
    std::size_t window_beta() const { return beta_.p; }

  private:
    Vec level_estimate(const ObservationBuffer& buffer) const;
    Vec slope_estimate(const ObservationBuffer& buffer) const;
    DerivativeBundle assemble(const Vec& theta, const Vec& levels,
                              const Vec& slopes) const;
    DerivativeBundle assemble_identity(const Vec& theta, const Vec& levels,
                                       const Vec& slopes) const;

    std::vector<double> xs_, ys_;
    Params params_;
    double tau_;
    AlphaScheme alpha_;
    BetaScheme beta_;
    // Sensor moments for the identity-link fast path.
    double sum_x_ = 0.0, sum_y_ = 0.0, sum_xx_ = 0.0, sum_yy_ = 0.0, sum_xy_ = 0.0;
};

}  // namespace tvopt
