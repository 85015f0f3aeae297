#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sdb/experiments.hpp"
#include "sdb/io.hpp"
#include "sdb/operators.hpp"
#include "sdb/random_fields.hpp"

using namespace sdb;
using namespace sdb::experiments;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("absorbing ball: entry by t_star and the energy envelope") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{1.0, 1.0, kTwoPi};
    SpectralScalar theta0 = random_scalar(grid, 5, 1.0, 2.0);  // G = 1
    const double G = diag::grashof(norm_l2(theta0), params);
    SpectralVector u0 = random_velocity(grid, 6, 10.0 * params.nu * G, 2.5);
    SimState initial(u0, theta0, 0.0);

    StepperConfig cfg;
    cfg.dt = 4e-3;
    cfg.adaptive = true;
    cfg.cfl_safety = 0.6;
    cfg.sample_every = 20;

    auto rep = absorbing_ball_experiment(initial, params, cfg);
    CHECK(rep.pass);
    // ||u0||^2 = 100 nu^2 G^2: t_star = log(100/3) / (nu kappa0^2)
    CHECK(rep.metrics.at("t_star") == doctest::Approx(std::log(100.0 / 3.0)).epsilon(1e-12));
    CHECK(rep.metrics.at("max_ratio_after_tstar") <= 1.0);
    CHECK(rep.metrics.at("energy_bound_margin") >= 0.0);
    CHECK(rep.metrics.at("first_entry_time") >= 0.0);

    // resting start: the formula floor t_star = 1/(nu kappa0^2) applies
    SimState resting(SpectralVector(grid), theta0, 0.0);
    auto rep0 = absorbing_ball_experiment(resting, params, cfg);
    CHECK(rep0.metrics.at("t_star") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep0.metrics.at("first_entry_time") == 0.0);
    CHECK(rep0.pass);
}

TEST_CASE("steady convergence of the stratified and columnar classes") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{1.0, 1.0, kTwoPi};

    // theta = theta(x2): u decays to zero
    SpectralScalar theta_v(grid);
    theta_v.set_mode(0, 1, Complex(0.05 / kTwoPi, 0.0));
    SpectralVector u0 = random_velocity(grid, 11, 0.05, 2.0);
    StepperConfig cfg;
    cfg.dt = 0.02;
    cfg.t_end = 40.0;
    cfg.sample_every = 50;
    auto rep = steady_convergence_experiment(theta_v, params, cfg, 0.1, 1e-9, "", &u0);
    CHECK(rep.pass);
    CHECK(rep.metrics.at("final_residual") < 1e-9);
    CHECK(rep.metrics.at("final_energy") < 1e-18);
    CHECK(rep.metrics.at("final_g_sigma") < 1e-10);

    // theta = theta(x1): u converges to the steady column
    exact::Profile1D thetaH = exact::Profile1D::cosine(exact::ProfileAxis::X1, 1, 0.02);
    SpectralScalar theta_h = exact::place_profile(thetaH, grid, 1, 0);
    auto rep_h = steady_convergence_experiment(theta_h, params, cfg, 0.1, 1e-9, "");
    CHECK(rep_h.pass);
    CHECK(rep_h.metrics.at("final_residual") < 1e-9);

    // out-of-regime Grashof is rejected
    SpectralScalar big = random_scalar(grid, 13, 10.0);
    CHECK_THROWS_AS(steady_convergence_experiment(big, params, cfg), ValidationError);
}

TEST_CASE("energy-enstrophy trace confines the trajectory") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{1.0, 1.0, kTwoPi};
    SpectralScalar theta0 = random_scalar(grid, 21, 1.0, 2.0);
    const double chi_threshold = params.g * norm_l2(theta0) / params.nu;

    // start above the parabola: single high mode, chi(0) = 2 * threshold
    SpectralVector u0(grid);
    const int m = 6;
    const double target_norm = 2.0 * chi_threshold / (m * m);
    u0.y().set_mode(m, 0, Complex(0.5 * target_norm / kTwoPi, 0.0));
    u0 *= target_norm / norm_l2(u0);
    SimState initial(u0, theta0, 0.0);

    StepperConfig cfg;
    cfg.dt = 4e-3;
    cfg.adaptive = true;
    cfg.cfl_safety = 0.6;
    cfg.t_end = 8.0;
    cfg.sample_every = 10;

    auto rep = energy_enstrophy_trace(initial, params, cfg);
    CHECK(rep.pass);
    CHECK(rep.metrics.at("entry_time") >= 0.0);
    CHECK(rep.metrics.at("max_excess_after_entry") <= 1e-6);
    CHECK(rep.metrics.at("min_lambda_ratio") >= 1.0 - 1e-12);

    // an eigen steady state starts inside and stays
    auto es = exact::eigen_steady_state(1, 0.3, grid, params);
    SimState se(es.u, es.theta, 0.0);
    StepperConfig short_cfg = cfg;
    short_cfg.t_end = 1.0;
    auto rep2 = energy_enstrophy_trace(se, params, short_cfg);
    CHECK(rep2.pass);
    CHECK(rep2.metrics.at("entry_time") == 0.0);
}

TEST_CASE("pure decay keeps lambda above the Poincare floor") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{0.5, 1.0, kTwoPi};
    SimState initial(random_velocity(grid, 31, 1.0, 2.5), SpectralScalar(grid), 0.0);
    StepperConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 2.0;
    cfg.sample_every = 10;
    auto rep = energy_enstrophy_trace(initial, params, cfg);
    // theta == 0 collapses the region to the origin; the floor and the chi
    // decrease are still enforced
    CHECK(rep.metrics.at("min_lambda_ratio") >= 1.0 - 1e-12);
    CHECK(rep.metrics.at("worst_chi_slope_above") < 1e-8);
}

TEST_CASE("exact family verification at modest resolution") {
    PhysParams params{0.1, 1.0, kTwoPi};
    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.sample_every = 1000000;

    auto rep = exact_family_verification(Family::PlaneWave, {16, 32}, 0.5, params, cfg);
    CHECK(rep.pass);
    CHECK(rep.metrics.at("final_error") < 1e-7);

    auto rep2 = exact_family_verification(Family::EigenSteady, {32}, 0.0, params, cfg);
    CHECK(rep2.pass);
    CHECK(rep2.metrics.at("final_error") < 1e-9);
}

TEST_CASE("backward uniqueness probe keeps the pair separated") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{0.5, 1.0, kTwoPi};
    SimState base(random_velocity(grid, 41, 0.3, 2.0), random_scalar(grid, 42, 0.3, 2.0), 0.0);

    StepperConfig cfg;
    cfg.dt = 2e-3;
    cfg.t_end = 0.4;
    cfg.sample_every = 10;

    auto rep = backward_uniqueness_probe(base, 1e-6, params, cfg, 43);
    CHECK(rep.pass);
    CHECK(rep.metrics.at("min_denominator") > 0.0);
    CHECK(rep.metrics.at("I_margin") >= 1.0);
    CHECK(rep.metrics.at("L_margin") >= 0.0);

    CHECK_THROWS_AS(backward_uniqueness_probe(base, 0.0, params, cfg, 43), IdenticalStatesError);
}

TEST_CASE("probe I(0) is the Dirichlet quotient for a velocity-only perturbation") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{0.5, 1.0, kTwoPi};
    SimState a(random_velocity(grid, 51, 0.3, 2.0), random_scalar(grid, 52, 0.3, 2.0), 0.0);
    SimState b = a;
    b.u.x().set_mode(0, 3, b.u.x().coeff(0, 3) + Complex(1e-7, 0.0));  // single |k| = 3 mode
    auto pf = diag::pair_functionals(a, b, params);
    CHECK(pf.I == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("turbulence diagnostics for the special classes") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams params{0.5, 1.0, kTwoPi};
    StepperConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 5.0;
    cfg.sample_every = 20;
    cfg.adaptive = true;
    cfg.cfl_safety = 0.6;

    // stratified theta: the solenoidal force vanishes identically
    SpectralScalar theta_v(grid);
    theta_v.set_mode(0, 1, Complex(0.25, 0.0));
    auto rep_v = turbulence_diagnostics_run(theta_v, params, cfg);
    CHECK(rep_v.pass);
    CHECK(rep_v.metrics.at("g_sigma_star") < 1e-10);

    // columnar theta: G_sigma stays pinned at G
    exact::Profile1D thetaH = exact::Profile1D::cosine(exact::ProfileAxis::X1, 1, 2.0);
    SpectralScalar theta_h = exact::place_profile(thetaH, grid, 1, 0);
    const double G = diag::grashof(norm_l2(theta_h), params);
    auto rep_h = turbulence_diagnostics_run(theta_h, params, cfg);
    CHECK(std::abs(rep_h.metrics.at("g_sigma_star") - G) <= 1e-8 * G);
    CHECK(rep_h.metrics.at("spectrum_energy_gap") < 1e-10);
}

TEST_CASE("sweep is deterministic and isolates failures") {
    auto grid = make_grid(24, kTwoPi);
    PhysParams params{1.0, 1.0, kTwoPi};

    CHECK(sweep({}, 4).empty());

    auto make_jobs = [&]() {
        std::vector<SweepJob> jobs;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            jobs.push_back({"trace_" + std::to_string(seed), [=]() {
                                SpectralScalar theta0 =
                                    random_scalar(grid, seed, 0.5 * seed, 2.0);
                                SimState initial(random_velocity(grid, seed + 50, 0.4, 2.0),
                                                 theta0, 0.0);
                                StepperConfig cfg;
                                cfg.dt = 5e-3;
                                cfg.t_end = 2.0;
                                cfg.sample_every = 20;
                                return energy_enstrophy_trace(initial, params, cfg);
                            }});
        }
        jobs.push_back({"broken", []() -> ExperimentReport {
                            throw ValidationError("deliberately broken configuration");
                        }});
        return jobs;
    };

    auto serial = sweep(make_jobs(), 1);
    auto parallel = sweep(make_jobs(), 4);
    REQUIRE(serial.size() == 4);
    REQUIRE(parallel.size() == 4);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].pass == parallel[i].pass);
        CHECK(serial[i].metrics == parallel[i].metrics);
    }
    CHECK(sweep_summary_csv(serial) == sweep_summary_csv(parallel));

    CHECK(!serial[3].pass);
    CHECK(serial[3].error.find("deliberately broken") != std::string::npos);
    CHECK(serial[0].pass);

    // Grashof scales linearly in ||theta0||
    const double g1 = serial[0].metrics.at("grashof");
    const double g2 = serial[1].metrics.at("grashof");
    const double g3 = serial[2].metrics.at("grashof");
    CHECK(g2 == doctest::Approx(2.0 * g1).epsilon(1e-12));
    CHECK(g3 == doctest::Approx(3.0 * g1).epsilon(1e-12));
}
