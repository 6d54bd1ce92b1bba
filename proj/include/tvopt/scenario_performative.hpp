#pragma once

#include <span>

#include "tvopt/scenario.hpp"

namespace tvopt {

/// Performative prediction with a Gaussian response: deploying theta
/// shifts the data to Z ~ N(mu(t) + eps(t) * theta, sigma^2) and the
/// squared loss makes the performative optimum mu(t) / (1 - eps(t)).
/// Risk derivatives are expressed through the Gaussian score ratios and
/// estimated by sample averages over the per-step draws.
///
/// mu(t) = mu_amp * sin(2 pi t), eps(t) = eps_base + eps_amp * sin(2 pi t);
/// eps must stay inside (0, 1) over the whole run.
class PerformativeScenario final : public Scenario {
  public:
    struct Params {
        double mu_amp = 1.0;
        double eps_base = 0.5;
        double eps_amp = 0.25;
        double sigma = 1.0;
        std::size_t n_samples = 200;
    };

    PerformativeScenario(double h, Params params);

    const char* name() const override { return "performative"; }
    std::size_t dim() const override { return 1; }
    std::size_t obs_dim() const override { return params_.n_samples; }

    double mu(double t) const;
    double mu_dot(double t) const;
    double eps(double t) const;
    double eps_dot(double t) const;
    double sigma() const { return params_.sigma; }

    /// mu(t) / (1 - eps(t)), exact.
    double true_theta_scalar(double t) const;
    Vec true_theta(double t) const override { return {true_theta_scalar(t)}; }

    /// n_samples i.i.d. draws from N(mu(t) + eps(t) * theta*(t), sigma^2):
    /// the deployed parameter generating the data is the optimum itself.
    Vec observe(std::int64_t k, RngStream& rng) const override;

    /// Draws at an arbitrary deployed theta (the expectations in the
    /// score identities are under the deployed distribution).
    Vec sample_at(const Vec& theta, double t, std::size_t n, RngStream& rng) const;

    /// Sample-average plug-in of the score-ratio identities at (theta, t).
    /// Throws EmptySample when samples is empty.
    DerivativeBundle bundle_from_samples(const Vec& theta,
                                         std::span<const double> samples,
                                         double t) const;

    DerivativeBundle estimate_bundle(const Vec& theta, std::int64_t k,
                                     const ObservationBuffer& buffer) const override;

    bool has_exact() const override { return true; }
    DerivativeBundle exact_bundle(const Vec& theta, double t) const override;
    double exact_risk(const Vec& theta, double t) const override;

    // Gaussian score ratios of the deployed density phi_{theta,t}.
    double score_theta(double z, double theta, double t) const;
    double score_theta_theta(double z, double theta, double t) const;
    double score_t(double z, double theta, double t) const;
    double score_theta_t(double z, double theta, double t) const;

    /// Density of Z under deployment (theta, t); the finite-difference
    /// checks of the score ratios differentiate this.
    double density(double z, double theta, double t) const;

  private:
    Params params_;
};

}  // namespace tvopt
