#include "tvopt/trackers.hpp"

#include <stdexcept>

#include "tvopt/errors.hpp"

namespace tvopt {

const char* method_name(Method m) { return m == Method::GD ? "gd" : "pc"; }

void TrackerConfig::validate() const {
    if (!(eta > 0.0)) throw ConfigError("TrackerConfig: eta must be > 0");
    if (!(h > 0.0)) throw ConfigError("TrackerConfig: h must be > 0");
}

TrackerState gd_step(const TrackerState& state, const Vec& grad,
                     const TrackerConfig& cfg) {
    if (grad.size() != state.theta_hat.size())
        throw std::invalid_argument("gd_step: gradient dimension mismatch");
    TrackerState next = state;
    axpy_inplace(next.theta_hat, -cfg.eta, grad);
    ++next.step_index;
    return next;
}

TrackerState pc_step(const TrackerState& state, const DerivativeBundle& bundle,
                     const TrackerConfig& cfg, SolveDiag* diag) {
    if (bundle.dim() != state.theta_hat.size())
        throw std::invalid_argument("pc_step: bundle dimension mismatch");
    const Vec drift_term = solve_spd(bundle.hessian, bundle.cross, diag);
    TrackerState next = state;
    axpy_inplace(next.theta_hat, -cfg.eta, bundle.gradient);
    axpy_inplace(next.theta_hat, -cfg.h, drift_term);
    ++next.step_index;
    return next;
}

Vec exact_prediction_drift(const Mat& hessian, const Vec& cross,
                           SolveDiag* diag) {
    Vec drift = solve_spd(hessian, cross, diag);
    for (double& x : drift) x = -x;
    return drift;
}

}  // namespace tvopt
