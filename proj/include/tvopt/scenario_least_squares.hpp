#pragma once

#include "tvopt/scenario.hpp"
#include "tvopt/weights.hpp"

namespace tvopt {

/// Linear regression with a fixed design: y_t = X theta*(t) + eps_t,
/// eps ~ N(0, tau^2 I). The gradient is estimated by an alpha moving
/// average of the observations, the Hessian X^T X / n is known exactly,
/// and the cross derivative comes from the beta (derivative) scheme.
class LeastSquaresScenario final : public Scenario {
  public:
    struct Params {
        double noise_var = 0.5;  // tau^2
        double c_m = 1.0;
        double c_p = 1.0;
        Trajectory trajectory = Trajectory::circle();
    };

    /// X is n x d; its Gram must be invertible (checked at construction).
    LeastSquaresScenario(double h, Mat design, Params params);

    const char* name() const override { return "least-squares"; }
    std::size_t dim() const override { return design_.cols; }
    std::size_t obs_dim() const override { return design_.rows; }
    std::size_t history_capacity() const override;
    std::int64_t warmup_steps() const override;

    Vec true_theta(double t) const override { return params_.trajectory.value(t); }
    Vec observe(std::int64_t k, RngStream& rng) const override;
    DerivativeBundle estimate_bundle(const Vec& theta, std::int64_t k,
                                     const ObservationBuffer& buffer) const override;

    bool has_exact() const override { return true; }
    DerivativeBundle exact_bundle(const Vec& theta, double t) const override;
    double exact_risk(const Vec& theta, double t) const override;

    /// (1/n) X^T (X theta - sum_i alpha_i y_{t-ih}), warm-up applied.
    Vec gradient_estimate(const Vec& theta, const ObservationBuffer& buffer) const;

    /// X^T X / n; constant and known.
    const Mat& hessian() const { return hessian_; }

    /// -(1/n) X^T (sum_j beta_j y_{t-jh}); zero during beta warm-up.
    Vec cross_estimate(const ObservationBuffer& buffer) const;

    std::size_t window_alpha() const { return alpha_.m; }
    std::size_t window_beta() const { return beta_.p; }

    /// Rows i.i.d. N(0, I_d); one draw per experiment, shared across
    /// methods and step sizes.
    static Mat random_design(std::size_t n, std::size_t d, RngStream& rng);

  private:
    Mat design_;      // n x d
    Mat hessian_;     // X^T X / n
    Params params_;
    double tau_;
    AlphaScheme alpha_;
    BetaScheme beta_;
};

}  // namespace tvopt
