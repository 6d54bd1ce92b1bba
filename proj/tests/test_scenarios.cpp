#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "test_support.hpp"
#include "tvopt/errors.hpp"
#include "tvopt/linalg.hpp"
#include "tvopt/scenario.hpp"
#include "tvopt/scenario_least_squares.hpp"
#include "tvopt/scenario_object_tracking.hpp"
#include "tvopt/scenario_performative.hpp"
#include "tvopt/trackers.hpp"

using namespace tvopt;
using tvtest::fd_gradient;
using tvtest::fd_jacobian;

namespace {

// Pushes noise-free (or noisy) observations for steps 0..k_last into a
// fresh buffer sized for the scenario.
ObservationBuffer fill_buffer(const Scenario& scn, std::int64_t k_last,
                              RngStream& rng) {
    ObservationBuffer buf(std::max<std::size_t>(1, scn.history_capacity()),
                          scn.obs_dim());
    for (std::int64_t k = 0; k <= k_last; ++k) buf.push(k, scn.observe(k, rng));
    return buf;
}

LeastSquaresScenario::Params ls_params(double noise_var, double c_m, double c_p,
                                       Trajectory traj) {
    LeastSquaresScenario::Params p;
    p.noise_var = noise_var;
    p.c_m = c_m;
    p.c_p = c_p;
    p.trajectory = traj;
    return p;
}

void check_gradient_vs_fd(const Scenario& scn, const Vec& theta, double t,
                          double tol) {
    const DerivativeBundle exact = scn.exact_bundle(theta, t);
    const Vec fd = fd_gradient([&](const Vec& x) { return scn.exact_risk(x, t); },
                               theta);
    CHECK(tvtest::max_abs_diff(exact.gradient, fd) <=
          tol * (1.0 + tvtest::norm(exact.gradient)));
}

void check_hessian_vs_fd(const Scenario& scn, const Vec& theta, double t,
                         double tol) {
    const DerivativeBundle exact = scn.exact_bundle(theta, t);
    const Mat fd = fd_jacobian(
        [&](const Vec& x) { return scn.exact_bundle(x, t).gradient; }, theta);
    CHECK(tvtest::max_abs_diff(exact.hessian, fd) <= tol);
}

void check_cross_vs_fd(const Scenario& scn, const Vec& theta, double t,
                       double tol) {
    const DerivativeBundle exact = scn.exact_bundle(theta, t);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double fd = tvtest::fd_scalar(
            [&](double s) { return scn.exact_bundle(theta, s).gradient[i]; }, t);
        CHECK(std::abs(exact.cross[i] - fd) <= tol * (1.0 + std::abs(fd)));
    }
}

}  // namespace

TEST_CASE("quadratic exact bundle") {
    QuadraticDriftScenario scn(0.01, 1.0, Trajectory::linear(1.0));
    SUBCASE("gradient vanishes on the trajectory") {
        const DerivativeBundle b = scn.exact_bundle({2.0 * 1.0}, 2.0);
        CHECK(b.gradient[0] == doctest::Approx(0.0).scale(1.0));
    }
    SUBCASE("hand-computed values at mu=1, c=1, t=2, theta=3") {
        const DerivativeBundle b = scn.exact_bundle({3.0}, 2.0);
        CHECK(b.gradient[0] == doctest::Approx(1.0));
        CHECK(b.hessian(0, 0) == doctest::Approx(1.0));
        CHECK(b.cross[0] == doctest::Approx(-1.0));
    }
    SUBCASE("prediction drift equals the true velocity") {
        const DerivativeBundle b = scn.exact_bundle({0.3}, 0.7);
        const Vec drift = exact_prediction_drift(b.hessian, b.cross);
        CHECK(drift[0] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("least-squares hessian is the scaled Gram matrix") {
    SUBCASE("identity design") {
        Mat x = Mat::identity(2);
        LeastSquaresScenario scn(0.01, x, ls_params(0.0, 1.0, 1.0, Trajectory::circle()));
        CHECK(scn.hessian()(0, 0) == doctest::Approx(0.5));
        CHECK(scn.hessian()(1, 1) == doctest::Approx(0.5));
        CHECK(scn.hessian()(0, 1) == doctest::Approx(0.0).scale(1.0));
    }
    SUBCASE("single row [2]") {
        Mat x(1, 1);
        x(0, 0) = 2.0;
        LeastSquaresScenario scn(0.01, x, ls_params(0.0, 1.0, 1.0, Trajectory::linear(1.0)));
        CHECK(scn.hessian()(0, 0) == doctest::Approx(4.0));
    }
    SUBCASE("random design matches finite differences of the risk") {
        RngStream rng(3, 1);
        Mat x = LeastSquaresScenario::random_design(12, 2, rng);
        LeastSquaresScenario scn(0.01, x, ls_params(0.3, 1.0, 1.0, Trajectory::circle()));
        for (int trial = 0; trial < 5; ++trial) {
            const Vec theta = tvtest::random_vec(2, rng);
            const double t = rng.uniform();
            check_hessian_vs_fd(scn, theta, t, 1e-6);
        }
    }
}

TEST_CASE("least-squares gradient estimate") {
    SUBCASE("constant trajectory, noise-free, theta at the optimum") {
        RngStream rng(4, 0);
        Mat x = LeastSquaresScenario::random_design(8, 1, rng);
        LeastSquaresScenario scn(0.01, x,
                                 ls_params(0.0, 1.0, 1.0, Trajectory::affine(2.5, 0.0)));
        RngStream obs(4, 1);
        const ObservationBuffer buf = fill_buffer(scn, 60, obs);
        const Vec g = scn.gradient_estimate({2.5}, buf);
        CHECK(std::abs(g[0]) <= 1e-12);
    }
    SUBCASE("affine trajectory is reproduced exactly once the window fills") {
        RngStream rng(4, 2);
        Mat x = LeastSquaresScenario::random_design(8, 1, rng);
        LeastSquaresScenario scn(0.01, x,
                                 ls_params(0.0, 1.0, 1.0, Trajectory::affine(0.5, 2.0)));
        RngStream obs(4, 3);
        const std::int64_t k_last = scn.warmup_steps() + 5;
        const ObservationBuffer buf = fill_buffer(scn, k_last, obs);
        const double t = scn.time_at(k_last);
        const Vec star = scn.true_theta(t);
        const Vec g = scn.gradient_estimate(star, buf);
        CHECK(std::abs(g[0]) <= 1e-10);
    }
    SUBCASE("hand example: unit design, constant history") {
        Mat x(1, 1);
        x(0, 0) = 1.0;
        // h = 1 and c_m = 3 give an alpha window of exactly 3.
        LeastSquaresScenario scn(1.0, x, ls_params(0.0, 3.0, 2.0, Trajectory::affine(2.0, 0.0)));
        REQUIRE(scn.window_alpha() == 3);
        ObservationBuffer buf(scn.history_capacity(), 1);
        buf.push(0, Vec{2.0});
        buf.push(1, Vec{2.0});
        buf.push(2, Vec{2.0});
        const Vec g = scn.gradient_estimate({3.0}, buf);
        CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("least-squares cross estimate") {
    SUBCASE("constant trajectory gives a zero time derivative") {
        RngStream rng(5, 0);
        Mat x = LeastSquaresScenario::random_design(8, 2, rng);
        LeastSquaresScenario scn(0.01, x,
                                 ls_params(0.0, 1.0, 1.0, Trajectory::fixed_point(1.0, -2.0)));
        RngStream obs(5, 1);
        const ObservationBuffer buf = fill_buffer(scn, scn.warmup_steps() + 3, obs);
        const Vec c = scn.cross_estimate(buf);
        CHECK(tvtest::norm(c) <= 1e-10);
    }
    SUBCASE("affine trajectory recovers -(X^T X / n) b exactly") {
        RngStream rng(5, 2);
        Mat x = LeastSquaresScenario::random_design(8, 1, rng);
        const double b = 1.75;
        LeastSquaresScenario scn(0.01, x, ls_params(0.0, 1.0, 1.0, Trajectory::linear(b)));
        RngStream obs(5, 3);
        const ObservationBuffer buf = fill_buffer(scn, scn.warmup_steps() + 2, obs);
        const Vec c = scn.cross_estimate(buf);
        const double expect = -scn.hessian()(0, 0) * b;
        CHECK(c[0] == doctest::Approx(expect).epsilon(1e-9));
    }
    SUBCASE("hand example: first difference") {
        Mat x(1, 1);
        x(0, 0) = 1.0;
        // h = 1, c_p = 2 gives a beta window of exactly 2.
        LeastSquaresScenario scn(1.0, x, ls_params(0.0, 1.0, 2.0, Trajectory::affine(0.0, 1.0)));
        REQUIRE(scn.window_beta() == 2);
        ObservationBuffer buf(scn.history_capacity(), 1);
        buf.push(0, Vec{1.0});
        buf.push(1, Vec{3.0});
        const Vec c = scn.cross_estimate(buf);
        CHECK(c[0] == doctest::Approx(-2.0).epsilon(1e-14));
    }
    SUBCASE("short history degenerates to a zero cross estimate") {
        RngStream rng(5, 4);
        Mat x = LeastSquaresScenario::random_design(4, 1, rng);
        LeastSquaresScenario scn(0.01, x, ls_params(0.0, 1.0, 1.0, Trajectory::linear(1.0)));
        ObservationBuffer buf(scn.history_capacity(), 4);
        RngStream obs(5, 5);
        buf.push(0, scn.observe(0, obs));
        CHECK(tvtest::norm(scn.cross_estimate(buf)) == 0.0);
    }
}

TEST_CASE("least-squares estimator error is proportional to the noise level") {
    // With an affine trajectory the moving-average bias vanishes, so the
    // estimate error is pure noise and must scale linearly with tau
    // (equivalently: halve when the variance is quartered).
    RngStream rng(6, 0);
    Mat x = LeastSquaresScenario::random_design(20, 2, rng);
    // Constant trajectory: the moving-average bias vanishes and the
    // estimate error is exactly linear in tau.
    const Trajectory traj = Trajectory::fixed_point(0.4, -1.1);
    const Vec theta{0.3, -0.2};
    auto mean_error = [&](double noise_var, std::uint64_t stream) {
        Mat xc = x;
        LeastSquaresScenario scn(0.01, xc, ls_params(noise_var, 1.0, 1.0, traj));
        double acc = 0.0;
        const int reps = 48;
        for (int r = 0; r < reps; ++r) {
            RngStream obs(6, stream + static_cast<std::uint64_t>(r));
            const ObservationBuffer buf = fill_buffer(scn, scn.warmup_steps(), obs);
            const double t = scn.time_at(scn.warmup_steps());
            Vec g = scn.gradient_estimate(theta, buf);
            const Vec g_exact = scn.exact_bundle(theta, t).gradient;
            for (std::size_t i = 0; i < g.size(); ++i) g[i] -= g_exact[i];
            acc += tvtest::norm(g);
        }
        return acc / reps;
    };
    const double e1 = mean_error(0.4, 100);
    const double e2 = mean_error(0.1, 100);  // tau halved
    const double ratio = e2 / e1;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);
}

TEST_CASE("object tracking construction and windows") {
    ObjectTrackingScenario::Params p;
    p.noise_var = 0.05;
    const ObjectTrackingScenario scn =
        ObjectTrackingScenario::grid_field(0.01, 11, p);
    CHECK(scn.obs_dim() == 121);
    CHECK(scn.dim() == 2);
    CHECK(scn.window_alpha() == 40);
    CHECK(scn.window_beta() == 32);

    // Collinear sensors are rejected.
    CHECK_THROWS_AS(ObjectTrackingScenario(0.01, {0.0, 1.0, 2.0}, {0.0, 1.0, 2.0},
                                           ObjectTrackingScenario::Params{}),
                    ConfigError);
}

TEST_CASE("object tracking estimates at the optimum, noise-free") {
    ObjectTrackingScenario::Params p;
    p.noise_var = 0.0;
    p.c_m = 3.0;  // h = 1: window exactly 3
    p.c_p = 2.0;
    p.trajectory = Trajectory::fixed_point(0.2, -0.4);
    ObjectTrackingScenario scn(1.0, {0.0, 5.0, 0.0}, {0.0, 0.0, 5.0}, p);
    RngStream obs(7, 0);
    const ObservationBuffer buf = fill_buffer(scn, 4, obs);
    const DerivativeBundle b = scn.estimate_bundle({0.2, -0.4}, 4, buf);
    CHECK(tvtest::norm(b.gradient) <= 1e-12);
    CHECK(tvtest::norm(b.cross) <= 1e-12);
}

TEST_CASE("object tracking hand-evaluated gradient (three sensors)") {
    // Sensors O=(0,0), A=(5,0), B=(0,5); identity link; optimum fixed at
    // the origin; theta = (1,0).
    // residuals r = (1, -9, 1) against exact levels (0, 25, 25), so
    // grad = (2/3) [ r_O (theta-O) + r_A (theta-A) + r_B (theta-B) ]
    //      = (2/3) (38, -5).
    ObjectTrackingScenario::Params p;
    p.noise_var = 0.0;
    p.c_m = 2.0;
    p.c_p = 2.0;
    p.trajectory = Trajectory::fixed_point(0.0, 0.0);
    ObjectTrackingScenario scn(1.0, {0.0, 5.0, 0.0}, {0.0, 0.0, 5.0}, p);
    RngStream obs(7, 1);
    const ObservationBuffer buf = fill_buffer(scn, 3, obs);
    const DerivativeBundle b = scn.estimate_bundle({1.0, 0.0}, 3, buf);
    CHECK(b.gradient[0] == doctest::Approx(2.0 / 3.0 * 38.0).epsilon(1e-12));
    CHECK(b.gradient[1] == doctest::Approx(2.0 / 3.0 * -5.0).epsilon(1e-12));
}

TEST_CASE("object tracking identity fast path equals the generic assembly") {
    // Same scenario, same history; the identity-link shortcut must agree
    // with the generic link assembly to rounding.
    auto make = [](bool generic) {
        ObjectTrackingScenario::Params p;
        p.noise_var = 0.05;
        p.c_m = 0.5;
        p.c_p = 0.5;
        if (generic) {
            p.link = LinkFunction{[](double x) { return x; },
                                  [](double) { return 1.0; },
                                  [](double) { return 0.0; },
                                  /*is_identity=*/false};
        }
        return ObjectTrackingScenario::grid_field(0.01, 5, p);
    };
    const ObjectTrackingScenario fast = make(false);
    const ObjectTrackingScenario slow = make(true);
    RngStream obs_a(8, 0), obs_b(8, 0);
    const ObservationBuffer buf_a = fill_buffer(fast, 30, obs_a);
    const ObservationBuffer buf_b = fill_buffer(slow, 30, obs_b);
    RngStream rng(8, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const Vec theta = tvtest::random_vec(2, rng);
        const DerivativeBundle a = fast.estimate_bundle(theta, 30, buf_a);
        const DerivativeBundle b = slow.estimate_bundle(theta, 30, buf_b);
        CHECK(tvtest::max_abs_diff(a.gradient, b.gradient) <= 1e-10);
        CHECK(tvtest::max_abs_diff(a.hessian, b.hessian) <= 1e-10);
        CHECK(tvtest::max_abs_diff(a.cross, b.cross) <= 1e-10);
    }
}

TEST_CASE("object tracking exact bundle matches finite differences") {
    ObjectTrackingScenario::Params p;
    p.noise_var = 0.05;
    const ObjectTrackingScenario scn = ObjectTrackingScenario::grid_field(0.01, 7, p);
    RngStream rng(9, 0);
    for (int trial = 0; trial < 10; ++trial) {
        Vec theta = tvtest::random_vec(2, rng);
        theta[0] *= 0.6;
        theta[1] *= 0.6;
        const double t = rng.uniform();
        check_gradient_vs_fd(scn, theta, t, 1e-5);
        check_hessian_vs_fd(scn, theta, t, 1e-4);
        check_cross_vs_fd(scn, theta, t, 1e-5);
    }
    // At the optimum with the identity link the Hessian reduces to
    // (4/n) sum (theta - X_i)(theta - X_i)^T.
    const double t0 = 0.3;
    const Vec star = scn.true_theta(t0);
    const DerivativeBundle at_opt = scn.exact_bundle(star, t0);
    CHECK(tvtest::norm(at_opt.gradient) <= 1e-12);
    check_hessian_vs_fd(scn, star, t0, 1e-5);
}

TEST_CASE("performative score ratios match finite differences of the density") {
    PerformativeScenario scn(0.01, {});
    RngStream rng(10, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = 3.0 * rng.uniform();
        const double theta = 4.0 * rng.uniform() - 2.0;
        const double mean = scn.mu(t) + scn.eps(t) * theta;
        const double z = mean + 4.0 * rng.uniform() - 2.0;

        const double phi = scn.density(z, theta, t);
        const double dtheta = 1e-5;
        const double fd_theta =
            (scn.density(z, theta + dtheta, t) - scn.density(z, theta - dtheta, t)) /
            (2.0 * dtheta * phi);
        CHECK(scn.score_theta(z, theta, t) ==
              doctest::Approx(fd_theta).epsilon(1e-6).scale(1.0 + std::abs(fd_theta)));

        // Wider steps for the second and mixed differences: the
        // difference itself is O(delta^2 phi), so delta = 1e-5 would put
        // double-precision cancellation at the 1e-6 tolerance.
        const double d2 = 1e-4;
        const double fd_theta2 =
            (scn.density(z, theta + d2, t) - 2.0 * phi +
             scn.density(z, theta - d2, t)) /
            (d2 * d2 * phi);
        CHECK(scn.score_theta_theta(z, theta, t) ==
              doctest::Approx(fd_theta2).epsilon(1e-6).scale(1.0 + std::abs(fd_theta2)));

        const double dt = 1e-5;
        const double fd_t =
            (scn.density(z, theta, t + dt) - scn.density(z, theta, t - dt)) /
            (2.0 * dt * phi);
        CHECK(scn.score_t(z, theta, t) ==
              doctest::Approx(fd_t).epsilon(1e-6).scale(1.0 + std::abs(fd_t)));

        const double dm = 3e-5;  // mixed term has larger curvature constants
        const double fd_tt =
            (scn.density(z, theta + dm, t + dm) -
             scn.density(z, theta + dm, t - dm) -
             scn.density(z, theta - dm, t + dm) +
             scn.density(z, theta - dm, t - dm)) /
            (4.0 * dm * dm * phi);
        CHECK(scn.score_theta_t(z, theta, t) ==
              doctest::Approx(fd_tt).epsilon(1e-6).scale(1.0 + std::abs(fd_tt)));
    }
}

TEST_CASE("performative optimum formula") {
    PerformativeScenario::Params fixed_eps;
    fixed_eps.mu_amp = 1.0;
    fixed_eps.eps_base = 0.5;
    fixed_eps.eps_amp = 0.0;
    PerformativeScenario scn(0.01, fixed_eps);
    CHECK(scn.true_theta_scalar(0.25) == doctest::Approx(2.0));  // mu=1, eps=0.5
    CHECK(scn.true_theta_scalar(0.0) == doctest::Approx(0.0).scale(1.0));

    PerformativeScenario defaults(0.01, {});
    CHECK(defaults.true_theta_scalar(0.0) == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(
        PerformativeScenario(0.01, PerformativeScenario::Params{1.0, 0.5, 0.6, 1.0, 10}),
        ConfigError);
}

TEST_CASE("performative exact bundle matches finite differences") {
    PerformativeScenario scn(0.01, {});
    RngStream rng(11, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec theta{4.0 * rng.uniform() - 2.0};
        const double t = 3.0 * rng.uniform();
        check_gradient_vs_fd(scn, theta, t, 1e-5);
        check_hessian_vs_fd(scn, theta, t, 1e-4);
        check_cross_vs_fd(scn, theta, t, 1e-5);
    }
}

TEST_CASE("performative sample bundle converges to the closed forms") {
    PerformativeScenario scn(0.01, {});
    RngStream rng(12, 0);
    auto mean_abs_err = [&](std::size_t n, std::uint64_t stream) {
        RngStream local(12, stream);
        double acc = 0.0;
        const int points = 24;
        for (int i = 0; i < points; ++i) {
            const double t = 3.0 * rng.uniform();
            const Vec theta{3.0 * rng.uniform() - 1.5};
            const Vec z = scn.sample_at(theta, t, n, local);
            const DerivativeBundle est = scn.bundle_from_samples(theta, z, t);
            const DerivativeBundle exact = scn.exact_bundle(theta, t);
            acc += std::abs(est.gradient[0] - exact.gradient[0]) +
                   std::abs(est.hessian(0, 0) - exact.hessian(0, 0)) +
                   std::abs(est.cross[0] - exact.cross[0]);
        }
        return acc / points;
    };
    const double err_small = mean_abs_err(4000, 1);
    const double err_large = mean_abs_err(16000, 2);  // 4x the samples
    const double ratio = err_large / err_small;
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);

    CHECK_THROWS_AS((void)scn.bundle_from_samples({0.0}, Vec{}, 0.0), EmptySample);
}

TEST_CASE("exact gradients vanish on the true trajectory for every scenario") {
    std::vector<std::unique_ptr<Scenario>> scenarios;
    scenarios.push_back(std::make_unique<QuadraticDriftScenario>(
        0.01, 0.8, Trajectory::sinusoid(1.0)));
    RngStream rng(13, 0);
    Mat x = LeastSquaresScenario::random_design(40, 2, rng);
    scenarios.push_back(std::make_unique<LeastSquaresScenario>(
        0.01, x, ls_params(0.5, 1.0, 1.0, Trajectory::circle())));
    ObjectTrackingScenario::Params otp;
    otp.noise_var = 0.05;
    scenarios.push_back(std::make_unique<ObjectTrackingScenario>(
        ObjectTrackingScenario::grid_field(0.01, 11, otp)));
    scenarios.push_back(std::make_unique<PerformativeScenario>(
        0.01, PerformativeScenario::Params{}));

    for (const auto& scn : scenarios) {
        CAPTURE(scn->name());
        for (int i = 0; i < 100; ++i) {
            const double t = 5.0 * rng.uniform();
            const DerivativeBundle b = scn->exact_bundle(scn->true_theta(t), t);
            CHECK(tvtest::norm(b.gradient) <= 1e-9);
            const Vec evals = symmetric_eigenvalues(b.hessian);
            CHECK(evals.front() > 0.0);
        }
    }

    // Where the strong-convexity constant is configured, the Hessian
    // respects it up to rounding.
    const auto& quad = static_cast<const QuadraticDriftScenario&>(*scenarios[0]);
    for (int i = 0; i < 10; ++i) {
        const double t = 5.0 * rng.uniform();
        const DerivativeBundle b = quad.exact_bundle({rng.normal()}, t);
        CHECK(b.hessian(0, 0) >= quad.mu_strong() - 1e-8);
    }
}

TEST_CASE("object tracking estimator error is proportional to the noise level") {
    ObjectTrackingScenario::Params base;
    base.trajectory = Trajectory::fixed_point(0.3, -0.2);  // no window bias
    base.c_m = 0.5;
    base.c_p = 0.5;
    const Vec theta{0.4, 0.1};
    auto mean_error = [&](double noise_var) {
        ObjectTrackingScenario::Params p = base;
        p.noise_var = noise_var;
        const ObjectTrackingScenario scn = ObjectTrackingScenario::grid_field(0.01, 7, p);
        double acc = 0.0;
        const int reps = 32;
        for (int r = 0; r < reps; ++r) {
            RngStream obs(21, 300 + static_cast<std::uint64_t>(r));
            const ObservationBuffer buf = fill_buffer(scn, scn.warmup_steps(), obs);
            const double t = scn.time_at(scn.warmup_steps());
            const DerivativeBundle est =
                scn.estimate_bundle(theta, scn.warmup_steps(), buf);
            const DerivativeBundle exact = scn.exact_bundle(theta, t);
            Vec diff = est.gradient;
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= exact.gradient[i];
            acc += tvtest::norm(diff);
        }
        return acc / reps;
    };
    const double ratio = mean_error(0.05) / mean_error(0.2);  // tau halved
    CHECK(ratio > 0.35);
    CHECK(ratio < 0.65);
}

TEST_CASE("paper simulation setups construct without error") {
    RngStream rng(14, 0);
    Mat x = LeastSquaresScenario::random_design(40, 2, rng);
    CHECK_NOTHROW(LeastSquaresScenario(0.01, x,
                                       ls_params(0.5, 1.0, 1.0, Trajectory::circle())));
    ObjectTrackingScenario::Params otp;
    otp.noise_var = 0.05;
    CHECK_NOTHROW(ObjectTrackingScenario::grid_field(0.01, 11, otp));
}
