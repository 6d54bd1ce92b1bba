#pragma once

#include <cstdint>

#include "tvopt/linalg.hpp"
#include "tvopt/types.hpp"

namespace tvopt {

enum class Method { GD, PC };

const char* method_name(Method m);

/// Per-run tracker parameters. h must equal the time grid's step.
struct TrackerConfig {
    Method method = Method::GD;
    double eta = 0.0;  // learning rate, > 0
    double h = 0.0;    // time step, > 0

    void validate() const;
};

/// Current estimate and step counter; a plain value type so independent
/// runs can be stepped concurrently without coordination.
struct TrackerState {
    Vec theta_hat;
    std::int64_t step_index = 0;
};

/// Gradient-descent update: theta <- theta - eta * grad.
TrackerState gd_step(const TrackerState& state, const Vec& grad,
                     const TrackerConfig& cfg);

/// Predictor-corrector update:
///   theta <- theta - eta * grad - h * H^{-1} * cross,
/// with the corrector and predictor terms applied simultaneously from the
/// same iterate. Propagates SingularHessian from the solve.
TrackerState pc_step(const TrackerState& state, const DerivativeBundle& bundle,
                     const TrackerConfig& cfg, SolveDiag* diag = nullptr);

/// The drift of the minimizer implied by the optimality ODE:
///   -H^{-1} * cross.
/// Exposed separately for diagnostics and tests.
Vec exact_prediction_drift(const Mat& hessian, const Vec& cross,
                           SolveDiag* diag = nullptr);

}  // namespace tvopt
