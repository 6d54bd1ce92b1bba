#include "tvopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "tvopt/errors.hpp"
#include "tvopt/linalg.hpp"
#include "tvopt/scenario_least_squares.hpp"
#include "tvopt/scenario_object_tracking.hpp"
#include "tvopt/scenario_performative.hpp"

namespace tvopt {

double EtaRule::value_for(double h) const {
    return q == 0.0 ? c : c * std::pow(h, q);
}

EtaRule EtaRule::parse(const std::string& text) {
    // Accepted forms: "<c>", "h^<q>", "<c>*h^<q>".
    const auto caret = text.find("h^");
    try {
        if (caret == std::string::npos) return fixed(std::stod(text));
        double c = 1.0;
        if (caret > 0) {
            std::string head = text.substr(0, caret);
            if (!head.empty() && head.back() == '*') head.pop_back();
            if (!head.empty()) c = std::stod(head);
        }
        const double q = std::stod(text.substr(caret + 2));
        return power(c, q);
    } catch (const std::exception&) {
        throw ConfigError("eta: cannot parse rule '" + text +
                          "' (expected '<c>', 'h^<q>' or '<c>*h^<q>')");
    }
}

std::string EtaRule::describe() const {
    if (q == 0.0) return format_double(c);
    if (c == 1.0) return "h^" + format_double(q);
    return format_double(c) + "*h^" + format_double(q);
}

const char* scenario_kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Quadratic: return "quadratic";
        case ScenarioKind::LeastSquares: return "least-squares";
        case ScenarioKind::ObjectTracking: return "object-tracking";
        case ScenarioKind::Performative: return "performative";
    }
    return "?";
}

ScenarioKind parse_scenario_kind(const std::string& name) {
    if (name == "quadratic") return ScenarioKind::Quadratic;
    if (name == "least-squares") return ScenarioKind::LeastSquares;
    if (name == "object-tracking") return ScenarioKind::ObjectTracking;
    if (name == "performative") return ScenarioKind::Performative;
    throw ConfigError("scenario: unknown scenario '" + name +
                      "' (expected quadratic, least-squares, object-tracking "
                      "or performative)");
}

std::unique_ptr<Scenario> make_scenario(const ScenarioSpec& spec, double h,
                                        std::uint64_t master_seed) {
    switch (spec.kind) {
        case ScenarioKind::Quadratic: {
            Trajectory traj = spec.quad_traj == QuadTrajectoryKind::Linear
                                  ? Trajectory::linear(spec.quad_coeff)
                                  : Trajectory::sinusoid(spec.quad_coeff);
            return std::make_unique<QuadraticDriftScenario>(h, spec.quad_mu, traj);
        }
        case ScenarioKind::LeastSquares: {
            RngStream design_rng(master_seed, derive_stream(master_seed, "design"));
            Mat x = LeastSquaresScenario::random_design(spec.ls_n, spec.ls_d,
                                                        design_rng);
            LeastSquaresScenario::Params p;
            p.noise_var = spec.ls_noise_var;
            p.c_m = spec.c_m;
            p.c_p = spec.c_p;
            p.trajectory = Trajectory::circle();
            return std::make_unique<LeastSquaresScenario>(h, std::move(x), p);
        }
        case ScenarioKind::ObjectTracking: {
            ObjectTrackingScenario::Params p;
            p.noise_var = spec.ot_noise_var;
            p.c_m = spec.c_m;
            p.c_p = spec.c_p;
            p.trajectory = Trajectory::circle();
            return std::make_unique<ObjectTrackingScenario>(
                ObjectTrackingScenario::grid_field(h, spec.ot_grid_side, p));
        }
        case ScenarioKind::Performative: {
            PerformativeScenario::Params p;
            p.mu_amp = spec.perf_mu_amp;
            p.eps_base = spec.perf_eps_base;
            p.eps_amp = spec.perf_eps_amp;
            p.sigma = spec.perf_sigma;
            p.n_samples = spec.perf_samples;
            return std::make_unique<PerformativeScenario>(h, p);
        }
    }
    throw ConfigError("scenario: invalid kind");
}

// The exponents are the theory-optimal powers for each scenario family;
// the constants are calibrated to the stock problems. For the moving-
// average scenarios the predictor needs a corrector strong enough to
// damp the drift-estimate lag within a fraction of the trajectory
// period, which the unit constant does not provide at small h.
EtaRule default_eta(ScenarioKind kind, Method method) {
    switch (kind) {
        case ScenarioKind::Quadratic:
            return EtaRule::fixed(0.1);
        case ScenarioKind::LeastSquares:
        case ScenarioKind::ObjectTracking:
            return method == Method::GD ? EtaRule::power(1.0, 0.3)
                                        : EtaRule::power(6.0, 0.8);
        case ScenarioKind::Performative:
            // Gradient noise is h-independent here, so eta ~ sqrt(h).
            return method == Method::GD ? EtaRule::power(20.0, 0.5)
                                        : EtaRule::power(3.0, 0.5);
    }
    return EtaRule::fixed(0.1);
}

EtaRule ExperimentConfig::eta_rule(Method m) const {
    if (m == Method::GD && eta_gd) return *eta_gd;
    if (m == Method::PC && eta_pc) return *eta_pc;
    return default_eta(scenario.kind, m);
}

TimeGrid ExperimentConfig::grid_for(double h) const {
    const double ratio = t_max / h;
    const auto steps = static_cast<std::int64_t>(std::llround(ratio));
    if (steps < 1 || std::abs(static_cast<double>(steps) * h - t_max) >
                         1e-6 * std::max(1.0, t_max))
        throw ConfigError("t-max: " + format_double(t_max) +
                          " is not an integer multiple of h = " + format_double(h));
    return TimeGrid(h, steps);
}

void ExperimentConfig::validate() const {
    if (hs.empty()) throw ConfigError("h: at least one step size is required");
    for (double h : hs) {
        if (!(h > 0.0)) throw ConfigError("h: step sizes must be > 0");
        (void)grid_for(h);
    }
    if (methods.empty()) throw ConfigError("method: at least one method required");
    if (mc_reps < 1) throw ConfigError("reps: must be >= 1");
    if (!(t_max > 0.0)) throw ConfigError("t-max: must be > 0");
    for (Method m : methods) {
        for (double h : hs) {
            if (!(eta_rule(m).value_for(h) > 0.0))
                throw ConfigError("eta: rule yields a non-positive rate");
        }
    }
    if (noise_free) {
        auto probe = make_scenario(scenario, hs.front(), master_seed);
        if (!probe->has_exact())
            throw ConfigError("noise-free: scenario '" +
                              std::string(probe->name()) +
                              "' has no exact derivatives");
    }
}

namespace {

Vec initial_theta(const Scenario& scenario, double offset) {
    Vec theta = scenario.true_theta(0.0);
    if (offset != 0.0) {
        const double component = offset / std::sqrt(static_cast<double>(theta.size()));
        for (double& x : theta) x += component;
    }
    return theta;
}

double tracking_error(const Vec& theta, const Vec& star) {
    double acc = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double d = theta[i] - star[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace

RunResult run_once(const Scenario& scenario, const TrackerConfig& cfg,
                   const TimeGrid& grid, RngStream& obs_rng,
                   const RunOptions& opts) {
    cfg.validate();
    if (cfg.h != grid.h)
        throw ConfigError("h: tracker config step does not match the grid");
    const auto t0 = std::chrono::steady_clock::now();

    RunResult result;
    result.method = cfg.method;
    result.h = grid.h;
    result.warmup_len = opts.use_exact_bundle ? 0 : scenario.warmup_steps();
    result.errors.reserve(static_cast<std::size_t>(grid.num_steps) + 1);

    TrackerState state{initial_theta(scenario, opts.init_offset), 0};
    result.errors.push_back(tracking_error(state.theta_hat, scenario.true_theta(0.0)));

    ObservationBuffer buffer(std::max<std::size_t>(1, scenario.history_capacity()),
                             scenario.obs_dim());
    const bool has_obs = scenario.obs_dim() > 0;
    const bool diag_wanted =
        opts.diagnostics && scenario.has_exact() && !opts.use_exact_bundle;
    double grad_err_acc = 0.0, drift_err_acc = 0.0;
    std::int64_t diag_count = 0;

    for (std::int64_t k = 0; k < grid.num_steps; ++k) {
        if (has_obs) {
            const Vec obs = scenario.observe(k, obs_rng);
            buffer.push(k, obs);
        }
        const double t = grid.time_of(k);
        try {
            const DerivativeBundle bundle =
                opts.use_exact_bundle ? scenario.exact_bundle(state.theta_hat, t)
                                      : scenario.estimate_bundle(state.theta_hat, k, buffer);
            if (diag_wanted) {
                const DerivativeBundle exact = scenario.exact_bundle(state.theta_hat, t);
                Vec gd_diff = bundle.gradient;
                for (std::size_t i = 0; i < gd_diff.size(); ++i)
                    gd_diff[i] -= exact.gradient[i];
                grad_err_acc += norm2(gd_diff);
                Vec drift_est = solve_spd(bundle.hessian, bundle.cross);
                const Vec drift_true = solve_spd(exact.hessian, exact.cross);
                for (std::size_t i = 0; i < drift_est.size(); ++i)
                    drift_est[i] -= drift_true[i];
                drift_err_acc += norm2(drift_est);
                ++diag_count;
            }
            if (cfg.method == Method::GD) {
                state = gd_step(state, bundle.gradient, cfg);
            } else {
                SolveDiag diag;
                state = pc_step(state, bundle, cfg, &diag);
                if (diag.ridge > 0.0) ++result.ridge_events;
            }
        } catch (const SingularHessian& e) {
            result.failed = true;
            result.failed_step = k;
            result.failure = e.what();
            break;
        }
        if (!all_finite(state.theta_hat)) {
            result.failed = true;
            result.failed_step = k;
            result.failure = "non-finite iterate at step " + std::to_string(k);
            break;
        }
        result.errors.push_back(
            tracking_error(state.theta_hat, scenario.true_theta(grid.time_of(k + 1))));
    }

    result.terminal_at_tmax = result.errors.back();
    const auto last = static_cast<std::int64_t>(result.errors.size()) - 1;
    std::int64_t from = std::max<std::int64_t>(
        result.warmup_len, last - static_cast<std::int64_t>(
                                      std::floor(0.05 * static_cast<double>(grid.num_steps))));
    from = std::clamp<std::int64_t>(from, 0, last);
    double acc = 0.0;
    for (std::int64_t i = from; i <= last; ++i)
        acc += result.errors[static_cast<std::size_t>(i)];
    result.terminal_last5 = acc / static_cast<double>(last - from + 1);

    if (diag_wanted && diag_count > 0) {
        result.mean_grad_est_err = grad_err_acc / static_cast<double>(diag_count);
        result.mean_drift_est_err = drift_err_acc / static_cast<double>(diag_count);
    }
    result.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return result;
}

SlopeFit fit_rate_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw DegenerateFit("fit_rate_slope: need at least 3 points, got " +
                            std::to_string(points.size()));
    const auto n = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [h, err] : points) {
        if (!(h > 0.0) || !(err > 0.0))
            throw DegenerateFit("fit_rate_slope: points must be positive");
        sx += std::log(h);
        sy += std::log(err);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [h, err] : points) {
        const double dx = std::log(h) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (sxx <= 0.0)
        throw DegenerateFit("fit_rate_slope: all step sizes are equal");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double sse = 0.0;
    for (const auto& [h, err] : points) {
        const double r = (std::log(err) - my) - fit.slope * (std::log(h) - mx);
        sse += r * r;
    }
    fit.std_error = std::sqrt(sse / (n - 2.0) / sxx);
    return fit;
}

SweepResult monte_carlo(const ExperimentConfig& config) {
    config.validate();

    // One immutable scenario per step size, shared across methods and reps.
    std::vector<std::unique_ptr<Scenario>> scenarios;
    scenarios.reserve(config.hs.size());
    for (double h : config.hs)
        scenarios.push_back(make_scenario(config.scenario, h, config.master_seed));

    struct Cell {
        Method method;
        std::size_t h_index;
        int rep;
    };
    std::vector<Cell> cells;
    for (Method m : config.methods)
        for (std::size_t hi = 0; hi < config.hs.size(); ++hi)
            for (int rep = 0; rep < config.mc_reps; ++rep)
                cells.push_back({m, hi, rep});

    SweepResult result;
    result.runs.resize(cells.size());

    const auto run_cell = [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        const double h = config.hs[cell.h_index];
        const Scenario& scenario = *scenarios[cell.h_index];
        TrackerConfig tracker;
        tracker.method = cell.method;
        tracker.h = h;
        tracker.eta = config.eta_rule(cell.method).value_for(h);
        RngStream obs_rng(config.master_seed,
                          derive_stream(config.master_seed, "obs", h,
                                        static_cast<std::uint64_t>(cell.rep)));
        RunOptions opts;
        opts.init_offset = config.init_offset;
        opts.use_exact_bundle = config.noise_free;
        opts.diagnostics = config.diagnostics;
        RunResult run = run_once(scenario, tracker, config.grid_for(h), obs_rng, opts);
        run.rep = cell.rep;
        result.runs[idx] = std::move(run);
    };

    int jobs = config.jobs > 0
                   ? config.jobs
                   : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp<int>(jobs, 1, static_cast<int>(cells.size()));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= cells.size()) return;
                    run_cell(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Per-(method, h) aggregation over replicates, then a log-log slope
    // per method on the replicate means when at least three step sizes
    // are present.
    for (Method m : config.methods) {
        std::vector<std::pair<double, double>> mean_points;
        std::vector<SummaryRow> rows;
        for (std::size_t hi = 0; hi < config.hs.size(); ++hi) {
            SummaryRow row;
            row.method = m;
            row.h = config.hs[hi];
            double sum = 0.0, sumsq = 0.0;
            int ok = 0, failed = 0;
            for (const RunResult& run : result.runs) {
                if (run.method != m || run.h != config.hs[hi]) continue;
                if (run.failed) {
                    ++failed;
                    continue;
                }
                sum += run.terminal_last5;
                sumsq += run.terminal_last5 * run.terminal_last5;
                ++ok;
            }
            row.reps = ok;
            row.failed_reps = failed;
            if (ok > 0) {
                row.terminal_mean = sum / ok;
                row.terminal_std =
                    ok > 1 ? std::sqrt(std::max(0.0, (sumsq - sum * sum / ok) /
                                                         (ok - 1)))
                           : 0.0;
                mean_points.emplace_back(row.h, row.terminal_mean);
            }
            rows.push_back(row);
        }
        if (mean_points.size() >= 3) {
            bool positive = true;
            for (const auto& [h, e] : mean_points)
                if (!(e > 0.0)) positive = false;
            if (positive) {
                const SlopeFit fit = fit_rate_slope(mean_points);
                for (SummaryRow& row : rows) {
                    row.has_slope = true;
                    row.slope = fit.slope;
                    row.slope_stderr = fit.std_error;
                }
            }
        }
        for (SummaryRow& row : rows) result.summary.push_back(row);
    }
    return result;
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open '" + path.string() + "' for writing");
    return out;
}

}  // namespace

void emit_trace_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "method,h,rep,step,t,error\n";
    for (const RunResult& run : result.runs) {
        const std::string prefix = std::string(method_name(run.method)) + "," +
                                   format_double(run.h) + "," +
                                   std::to_string(run.rep) + ",";
        for (std::size_t k = 0; k < run.errors.size(); ++k) {
            out << prefix << k << ','
                << format_double(static_cast<double>(k) * run.h) << ','
                << format_double(run.errors[k]) << '\n';
        }
    }
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

void emit_summary_csv(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "method,h,terminal_error_mean,terminal_error_std,reps,slope,slope_stderr\n";
    for (const SummaryRow& row : result.summary) {
        out << method_name(row.method) << ',' << format_double(row.h) << ','
            << format_double(row.terminal_mean) << ','
            << format_double(row.terminal_std) << ',' << row.reps << ',';
        if (row.has_slope)
            out << format_double(row.slope) << ',' << format_double(row.slope_stderr);
        else
            out << ',';
        out << '\n';
    }
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace tvopt
