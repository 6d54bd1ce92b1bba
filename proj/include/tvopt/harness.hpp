#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvopt/grid.hpp"
#include "tvopt/scenario.hpp"
#include "tvopt/trackers.hpp"

namespace tvopt {

/// Learning-rate rule eta = c * h^q; q = 0 is a fixed rate.
struct EtaRule {
    double c = 0.1;
    double q = 0.0;

    double value_for(double h) const;
    static EtaRule fixed(double v) { return {v, 0.0}; }
    static EtaRule power(double c, double q) { return {c, q}; }

    /// Parses "0.1", "h^0.8" or "0.5*h^0.8".
    static EtaRule parse(const std::string& text);
    std::string describe() const;
};

enum class ScenarioKind { Quadratic, LeastSquares, ObjectTracking, Performative };

const char* scenario_kind_name(ScenarioKind kind);
ScenarioKind parse_scenario_kind(const std::string& name);

enum class QuadTrajectoryKind { Linear, Sinusoid };

/// Everything needed to build a Scenario for a given step size. The
/// least-squares design matrix is drawn once per experiment from its own
/// stream keyed only by the master seed, so every method and step size
/// sees the same X.
struct ScenarioSpec {
    ScenarioKind kind = ScenarioKind::Quadratic;

    double c_m = 1.0;
    double c_p = 1.0;

    // quadratic
    double quad_mu = 1.0;
    double quad_coeff = 1.0;
    QuadTrajectoryKind quad_traj = QuadTrajectoryKind::Linear;

    // least squares
    std::size_t ls_n = 40;
    std::size_t ls_d = 2;
    double ls_noise_var = 0.5;

    // object tracking
    std::size_t ot_grid_side = 11;
    double ot_noise_var = 0.05;

    // performative
    double perf_mu_amp = 1.0;
    double perf_eps_base = 0.5;
    double perf_eps_amp = 0.25;
    double perf_sigma = 1.0;
    std::size_t perf_samples = 200;
};

std::unique_ptr<Scenario> make_scenario(const ScenarioSpec& spec, double h,
                                        std::uint64_t master_seed);

/// Per-scenario learning-rate defaults. The power rules for the
/// least-squares and object-tracking scenarios are the exponents under
/// which the claimed tracking-error rates hold; the quadratic scenario
/// uses a fixed rate.
EtaRule default_eta(ScenarioKind kind, Method method);

struct ExperimentConfig {
    ScenarioSpec scenario;
    std::vector<Method> methods{Method::GD, Method::PC};
    std::vector<double> hs;
    std::optional<EtaRule> eta_gd;  // default_eta when unset
    std::optional<EtaRule> eta_pc;
    double t_max = 3.0;
    int mc_reps = 1;
    std::uint64_t master_seed = 0;
    double init_offset = 0.1;
    bool noise_free = false;  // exact bundles instead of estimates
    bool diagnostics = false;
    int jobs = 0;  // 0 = hardware concurrency

    EtaRule eta_rule(Method m) const;
    TimeGrid grid_for(double h) const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct RunResult {
    Method method = Method::GD;
    double h = 0.0;
    int rep = 0;
    std::vector<double> errors;  // ||theta_hat - theta*|| at steps 0..K
    double terminal_at_tmax = 0.0;
    double terminal_last5 = 0.0;  // mean over the trailing 5% of steps
    std::int64_t warmup_len = 0;
    std::int64_t ridge_events = 0;
    bool failed = false;
    std::int64_t failed_step = -1;
    std::string failure;
    double wall_ms = 0.0;
    // Mean estimator errors vs the exact bundle, when requested and available.
    std::optional<double> mean_grad_est_err;
    std::optional<double> mean_drift_est_err;
};

struct RunOptions {
    double init_offset = 0.1;
    bool use_exact_bundle = false;
    bool diagnostics = false;
};

/// One tracker run over the grid: observe, estimate, update, record the
/// tracking error at every grid point. Deterministic given (scenario
/// parameters, tracker config, grid, stream key).
RunResult run_once(const Scenario& scenario, const TrackerConfig& cfg,
                   const TimeGrid& grid, RngStream& obs_rng,
                   const RunOptions& opts = {});

struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0;
};

/// OLS of log(error) on log(h). Requires >= 3 points with positive
/// coordinates; throws DegenerateFit otherwise (including all-equal h).
SlopeFit fit_rate_slope(const std::vector<std::pair<double, double>>& points);

struct SummaryRow {
    Method method = Method::GD;
    double h = 0.0;
    double terminal_mean = 0.0;
    double terminal_std = 0.0;
    int reps = 0;
    int failed_reps = 0;
    bool has_slope = false;
    double slope = 0.0;
    double slope_stderr = 0.0;
};

struct SweepResult {
    std::vector<RunResult> runs;       // sorted by (method, h, rep)
    std::vector<SummaryRow> summary;   // sorted by (method, h)
};

/// Full grid over methods x hs x replicates. Observation streams are
/// keyed by (master_seed, h, rep) only, so the two methods consume
/// bit-identical observation sequences within a cell. Cells run
/// concurrently when jobs > 1; output order is independent of schedule.
SweepResult monte_carlo(const ExperimentConfig& config);

/// Trace CSV: method,h,rep,step,t,error (round-trip exact floats).
void emit_trace_csv(const SweepResult& result, const std::filesystem::path& path);

/// Summary CSV: method,h,terminal_error_mean,terminal_error_std,reps,
/// slope,slope_stderr (slope empty when not fitted).
void emit_summary_csv(const SweepResult& result, const std::filesystem::path& path);

/// Round-trip exact decimal formatting (shortest form).
std::string format_double(double x);

}  // namespace tvopt
