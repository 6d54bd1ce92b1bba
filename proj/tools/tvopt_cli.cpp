// tvopt — track a moving optimum with gradient-descent and
// predictor-corrector updates; run single experiments, step-size sweeps
// and the stock figure reproductions, emitting trace/summary CSVs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tvopt/errors.hpp"
#include "tvopt/harness.hpp"
#include "tvopt/kernels.hpp"
#include "tvopt/weights.hpp"

namespace {

using tvopt::EtaRule;
using tvopt::ExperimentConfig;
using tvopt::Method;
using tvopt::ScenarioKind;

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return buf;
}

std::vector<Method> parse_methods(const std::string& text) {
    if (text == "gd") return {Method::GD};
    if (text == "pc") return {Method::PC};
    if (text == "both") return {Method::GD, Method::PC};
    throw tvopt::ConfigError("method: expected gd, pc or both, got '" + text + "'");
}

// Options shared by `run` and `sweep`, collected as strings/values and
// resolved into an ExperimentConfig after parsing.
struct CommonArgs {
    std::string scenario = "quadratic";
    std::string method = "both";
    std::vector<double> hs;
    std::string eta, eta_gd, eta_pc;
    double t_max = 3.0;
    int reps = 1;
    std::uint64_t seed = 0;
    double offset = 0.1;
    bool noise_free = false;
    bool diagnostics = false;
    int jobs = 0;
    std::string out_dir;
    // scenario knobs
    double c_m = -1.0;  // < 0: per-scenario default
    double c_p = -1.0;
    double noise_var = -1.0;  // < 0: scenario default
    std::string trajectory;   // quadratic: linear | sinusoid
    double quad_mu = 1.0;
    double quad_coeff = 1.0;
    std::size_t ls_n = 40;
    std::size_t grid_side = 11;
    std::size_t samples = 200;
    double sigma = 1.0;
    double mu_amp = 1.0;
    double eps_base = 0.5;
    double eps_amp = 0.25;
};

void add_common_options(CLI::App* cmd, CommonArgs& args, bool multi_h) {
    cmd->set_help_flag("--help", "Print this help message and exit");
    cmd->fallthrough();
    cmd->option_defaults()->always_capture_default();
    cmd->add_option("--scenario", args.scenario,
                    "Scenario: quadratic, least-squares, object-tracking, performative");
    cmd->add_option("--method", args.method, "Update rule: gd, pc or both");
    auto* h_opt =
        multi_h ? cmd->add_option("--h", args.hs, "Step sizes (comma separated)")
                      ->delimiter(',')
                : cmd->add_option("--h", args.hs, "Step size")->expected(1);
    h_opt->required();
    cmd->add_option("--eta", args.eta,
                    "Learning-rate rule for both methods ('0.1', 'h^0.8', '0.5*h^0.8')");
    cmd->add_option("--eta-gd", args.eta_gd, "Learning-rate rule for gd only");
    cmd->add_option("--eta-pc", args.eta_pc, "Learning-rate rule for pc only");
    cmd->add_option("--t-max", args.t_max, "End of the tracking interval");
    cmd->add_option("--reps", args.reps, "Monte Carlo replicates");
    cmd->add_option("--seed", args.seed, "Master seed")->envname("TVOPT_SEED");
    cmd->add_option("--offset", args.offset, "Norm of the initial displacement from theta*(0)");
    cmd->add_flag("--noise-free", args.noise_free,
                  "Use exact derivative bundles instead of estimates");
    cmd->add_flag("--diagnostics", args.diagnostics,
                  "Record mean estimator errors against the exact bundles");
    cmd->add_option("--jobs", args.jobs, "Worker threads (0 = all cores)");
    cmd->add_option("--out", args.out_dir, "Output directory (default out/<cmd>-<timestamp>)");
    cmd->add_option("--c-m", args.c_m, "Alpha-window constant (default per scenario)");
    cmd->add_option("--c-p", args.c_p, "Beta-window constant (default per scenario)");
    cmd->add_option("--noise-var", args.noise_var,
                    "Observation noise variance (default per scenario)");
    cmd->add_option("--trajectory", args.trajectory,
                    "Quadratic trajectory: linear or sinusoid");
    cmd->add_option("--mu", args.quad_mu, "Quadratic scenario strong-convexity mu");
    cmd->add_option("--drift-coeff", args.quad_coeff,
                    "Quadratic trajectory coefficient theta*");
    cmd->add_option("--ls-n", args.ls_n, "Least-squares rows n");
    cmd->add_option("--grid-side", args.grid_side, "Object-tracking sensor grid side");
    cmd->add_option("--samples", args.samples, "Performative samples per step");
    cmd->add_option("--sigma", args.sigma, "Performative response sigma");
    cmd->add_option("--mu-amp", args.mu_amp, "Performative mu(t) amplitude");
    cmd->add_option("--eps-base", args.eps_base, "Performative eps(t) baseline");
    cmd->add_option("--eps-amp", args.eps_amp, "Performative eps(t) amplitude");
}

// Window constants that match the stock trajectories; the generic
// API default of 1.0 spans half a period of the sine path at h = 1e-2,
// which buries both estimators in bias.
void scenario_window_defaults(ScenarioKind kind, double& c_m, double& c_p) {
    if (c_m < 0.0) c_m = (kind == ScenarioKind::LeastSquares ||
                          kind == ScenarioKind::ObjectTracking)
                             ? 0.08
                             : 1.0;
    if (c_p < 0.0) {
        if (kind == ScenarioKind::LeastSquares)
            c_p = 0.2;
        else if (kind == ScenarioKind::ObjectTracking)
            c_p = 0.1;
        else
            c_p = 1.0;
    }
}

ExperimentConfig resolve_config(const CommonArgs& args, bool sweep_mode) {
    ExperimentConfig config;
    config.scenario.kind = tvopt::parse_scenario_kind(args.scenario);
    config.methods = parse_methods(args.method);
    config.hs = args.hs;
    config.t_max = args.t_max;
    config.mc_reps = args.reps;
    config.master_seed = args.seed;
    config.init_offset = args.offset;
    config.noise_free = args.noise_free;
    config.diagnostics = args.diagnostics;
    config.jobs = args.jobs;

    if (!args.eta.empty()) {
        config.eta_gd = EtaRule::parse(args.eta);
        config.eta_pc = EtaRule::parse(args.eta);
    }
    if (!args.eta_gd.empty()) config.eta_gd = EtaRule::parse(args.eta_gd);
    if (!args.eta_pc.empty()) config.eta_pc = EtaRule::parse(args.eta_pc);

    auto& spec = config.scenario;
    spec.c_m = args.c_m;
    spec.c_p = args.c_p;
    scenario_window_defaults(spec.kind, spec.c_m, spec.c_p);
    spec.quad_mu = args.quad_mu;
    spec.quad_coeff = args.quad_coeff;
    spec.ls_n = args.ls_n;
    spec.ot_grid_side = args.grid_side;
    spec.perf_samples = args.samples;
    spec.perf_sigma = args.sigma;
    spec.perf_mu_amp = args.mu_amp;
    spec.perf_eps_base = args.eps_base;
    spec.perf_eps_amp = args.eps_amp;
    if (args.noise_var >= 0.0) {
        spec.ls_noise_var = args.noise_var;
        spec.ot_noise_var = args.noise_var;
    }

    // A sweep on the quadratic scenario defaults to the sinusoidal path
    // (the linear drift is tracked exactly by PC, so there is no rate to
    // fit); a single run defaults to the linear drift.
    if (!args.trajectory.empty()) {
        if (args.trajectory == "linear")
            spec.quad_traj = tvopt::QuadTrajectoryKind::Linear;
        else if (args.trajectory == "sinusoid")
            spec.quad_traj = tvopt::QuadTrajectoryKind::Sinusoid;
        else
            throw tvopt::ConfigError("trajectory: expected linear or sinusoid, got '" +
                                     args.trajectory + "'");
    } else if (sweep_mode && spec.kind == ScenarioKind::Quadratic) {
        spec.quad_traj = tvopt::QuadTrajectoryKind::Sinusoid;
    }
    return config;
}

void echo_config(const ExperimentConfig& config, const std::string& out_dir) {
    std::ostream& err = std::cerr;
    err << "# scenario=" << tvopt::scenario_kind_name(config.scenario.kind);
    err << " methods=";
    for (std::size_t i = 0; i < config.methods.size(); ++i)
        err << (i ? "," : "") << tvopt::method_name(config.methods[i]);
    err << " h=";
    for (std::size_t i = 0; i < config.hs.size(); ++i)
        err << (i ? "," : "") << tvopt::format_double(config.hs[i]);
    err << " t_max=" << tvopt::format_double(config.t_max)
        << " reps=" << config.mc_reps << " seed=" << config.master_seed
        << "\n# eta_gd=" << config.eta_rule(Method::GD).describe()
        << " eta_pc=" << config.eta_rule(Method::PC).describe()
        << " c_m=" << tvopt::format_double(config.scenario.c_m)
        << " c_p=" << tvopt::format_double(config.scenario.c_p)
        << " offset=" << tvopt::format_double(config.init_offset)
        << " noise_free=" << (config.noise_free ? "yes" : "no")
        << " kernels=" << tvopt::kernels::backend_name()
        << "\n# out=" << out_dir << "\n";
}

int execute_experiment(const ExperimentConfig& config, std::string out_dir,
                       const std::string& name_prefix) {
    echo_config(config, out_dir);
    const tvopt::SweepResult result = tvopt::monte_carlo(config);
    std::filesystem::create_directories(out_dir);
    const auto trace_path =
        std::filesystem::path(out_dir) / (name_prefix + "trace.csv");
    const auto summary_path =
        std::filesystem::path(out_dir) / (name_prefix + "summary.csv");
    emit_trace_csv(result, trace_path);
    emit_summary_csv(result, summary_path);

    bool any_failed = false;
    for (const tvopt::SummaryRow& row : result.summary) {
        std::cout << tvopt::method_name(row.method)
                  << " h=" << tvopt::format_double(row.h) << " terminal="
                  << tvopt::format_double(row.terminal_mean);
        if (row.reps > 1)
            std::cout << " +/- " << tvopt::format_double(row.terminal_std);
        std::cout << " (reps=" << row.reps;
        if (row.failed_reps > 0) {
            std::cout << ", failed=" << row.failed_reps;
            any_failed = true;
        }
        std::cout << ")\n";
    }
    std::int64_t ridge_total = 0;
    for (const tvopt::RunResult& run : result.runs) ridge_total += run.ridge_events;
    if (ridge_total > 0)
        std::cerr << "# ridge fallback engaged on " << ridge_total << " solves\n";
    if (config.diagnostics) {
        for (const tvopt::RunResult& run : result.runs) {
            if (run.mean_grad_est_err) {
                std::cerr << "# diag " << tvopt::method_name(run.method)
                          << " h=" << tvopt::format_double(run.h)
                          << " rep=" << run.rep << " grad_err="
                          << tvopt::format_double(*run.mean_grad_est_err)
                          << " drift_err="
                          << tvopt::format_double(*run.mean_drift_est_err) << "\n";
            }
        }
    }

    if (config.hs.size() >= 3) {
        for (Method m : config.methods) {
            for (const tvopt::SummaryRow& row : result.summary) {
                if (row.method == m && row.has_slope) {
                    std::cout << tvopt::method_name(m) << " slope="
                              << tvopt::format_double(row.slope) << " +/- "
                              << tvopt::format_double(row.slope_stderr) << "\n";
                    break;
                }
            }
        }
    } else if (config.hs.size() > 1) {
        std::cerr << "# fewer than 3 step sizes; no rate fitted\n";
    } else {
        std::cerr << "# single step size; no rate fitted\n";
    }
    std::cout << "wrote " << trace_path.string() << "\n";
    std::cout << "wrote " << summary_path.string() << "\n";
    return any_failed ? 1 : 0;
}

int cmd_weights(const std::string& scheme, std::size_t m, std::size_t p, double h) {
    if (scheme == "alpha") {
        const tvopt::AlphaScheme s = tvopt::alpha_weights(m);
        for (std::size_t i = 0; i < s.weights.size(); ++i)
            std::cout << (i ? " " : "") << tvopt::format_double(s.weights[i]);
        std::cout << "\n";
        std::cout << "residual_sum=" << tvopt::format_double(s.constraint_residual_sum())
                  << " residual_moment="
                  << tvopt::format_double(s.constraint_residual_moment()) << "\n";
        return 0;
    }
    if (scheme == "beta") {
        const tvopt::BetaScheme s = tvopt::beta_weights(p, h);
        for (std::size_t i = 0; i < s.weights.size(); ++i)
            std::cout << (i ? " " : "") << tvopt::format_double(s.weights[i]);
        std::cout << "\n";
        std::cout << "residual_sum=" << tvopt::format_double(s.constraint_residual_sum())
                  << " residual_moment="
                  << tvopt::format_double(s.constraint_residual_moment()) << "\n";
        return 0;
    }
    throw tvopt::ConfigError("scheme: expected alpha or beta, got '" + scheme + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tracking a time-varying optimum: gradient descent vs "
                 "predictor-corrector"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    // Config keys are namespaced by subcommand: [run] h = 0.01 or the
    // dotted form run.h = 0.01. Unknown keys are errors.
    app.set_config("--config", "",
                   "TOML config file with [run]/[sweep]/... sections "
                   "(flags take precedence)");
    app.allow_config_extras(false);

    CommonArgs run_args, sweep_args;
    CLI::App* run_cmd = app.add_subcommand(
        "run", "One experiment cell (single step size, optional replicates)");
    add_common_options(run_cmd, run_args, /*multi_h=*/false);
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Grid over methods x step sizes x replicates, with rate fits");
    add_common_options(sweep_cmd, sweep_args, /*multi_h=*/true);

    std::string weights_scheme = "alpha";
    std::size_t weights_m = 3, weights_p = 2;
    double weights_h = 0.01;
    CLI::App* weights_cmd =
        app.add_subcommand("weights", "Print a moving-average weight scheme");
    weights_cmd->set_help_flag("--help", "Print this help message and exit");
    weights_cmd->fallthrough();
    weights_cmd->option_defaults()->always_capture_default();
    weights_cmd->add_option("--scheme", weights_scheme, "alpha or beta");
    weights_cmd->add_option("--m", weights_m, "Alpha window length");
    weights_cmd->add_option("--p", weights_p, "Beta window length");
    weights_cmd->add_option("--h", weights_h, "Step size (beta scheme)");

    std::string repro_figure;
    std::uint64_t repro_seed = 0;
    std::string repro_out;
    int repro_jobs = 0;
    bool repro_full = false;
    CLI::App* repro_cmd = app.add_subcommand(
        "reproduce", "Stock experiments: regression, object-tracking, performative");
    repro_cmd->set_help_flag("--help", "Print this help message and exit");
    repro_cmd->fallthrough();
    repro_cmd->option_defaults()->always_capture_default();
    repro_cmd->add_option("figure", repro_figure, "Which experiment to run")->required();
    repro_cmd->add_option("--seed", repro_seed, "Master seed")->envname("TVOPT_SEED");
    repro_cmd->add_option("--out", repro_out, "Output directory");
    repro_cmd->add_option("--jobs", repro_jobs, "Worker threads (0 = all cores)");
    repro_cmd->add_flag("--full", repro_full,
                        "Use the full step-size set {1e-2, 1e-3, 1e-4} "
                        "(long-running) instead of {1e-2, 3e-3, 1e-3}");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            ExperimentConfig config = resolve_config(run_args, /*sweep_mode=*/false);
            std::string out = run_args.out_dir.empty()
                                  ? "out/run-" + timestamp()
                                  : run_args.out_dir;
            return execute_experiment(config, out, "");
        }
        if (sweep_cmd->parsed()) {
            ExperimentConfig config = resolve_config(sweep_args, /*sweep_mode=*/true);
            std::string out = sweep_args.out_dir.empty()
                                  ? "out/sweep-" + timestamp()
                                  : sweep_args.out_dir;
            return execute_experiment(config, out, "");
        }
        if (weights_cmd->parsed()) {
            return cmd_weights(weights_scheme, weights_m, weights_p, weights_h);
        }
        if (repro_cmd->parsed()) {
            CommonArgs args;
            args.seed = repro_seed;
            args.reps = 10;
            args.t_max = 3.0;
            args.jobs = repro_jobs;
            args.offset = 0.1;
            args.hs = repro_full ? std::vector<double>{1e-2, 1e-3, 1e-4}
                                 : std::vector<double>{1e-2, 3e-3, 1e-3};
            std::string prefix;
            if (repro_figure == "regression") {
                args.scenario = "least-squares";
                prefix = "regression_";
            } else if (repro_figure == "object-tracking") {
                args.scenario = "object-tracking";
                prefix = "object_tracking_";
            } else if (repro_figure == "performative") {
                args.scenario = "performative";
                args.hs = {1e-2};
                // The stock eps band 0.5 +/- 0.25 drives (1 - eps)^2 down
                // to 1/16, where the sampled Hessian loses positivity and
                // no stable learning rate keeps the trackers in the
                // estimator's basin; the reproduction uses a band the
                // samplers can actually follow.
                args.eps_base = 0.4;
                args.eps_amp = 0.05;
                prefix = "performative_";
            } else {
                throw tvopt::ConfigError("figure: expected regression, "
                                         "object-tracking or performative, got '" +
                                         repro_figure + "'");
            }
            ExperimentConfig config = resolve_config(args, /*sweep_mode=*/true);
            std::string out = repro_out.empty()
                                  ? "out/reproduce-" + timestamp()
                                  : repro_out;
            return execute_experiment(config, out, prefix);
        }
        return 2;
    } catch (const tvopt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tvopt::InvalidWindow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
