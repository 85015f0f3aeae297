#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sdb/diagnostics.hpp"
#include "sdb/dynamics.hpp"
#include "sdb/exact_solutions.hpp"

namespace sdb::experiments {

/// Outcome of one scripted scenario.  `pass` is determined solely by the
/// experiment's declared criterion; every metric that criterion uses is in
/// `metrics`.  `error` carries the what() of an aborted run (pass stays
/// false) so sweeps can isolate failures per configuration.
struct ExperimentReport {
    std::string name;
    std::map<std::string, std::string> params_used;
    bool pass = false;
    std::map<std::string, double> metrics;
    std::vector<std::string> series_paths;
    std::string error;
};

/// Time series kept in memory during a run; written out as CSV when an
/// output directory is configured.
struct TraceRow {
    double t;
    diag::DiagRecord rec;
};

/// Runs to 2 t*, where t* = (1/(nu kappa0^2)) max{1, log(||u0||^2/(3 nu^2 G^2))},
/// and verifies ||u(t)|| <= 2 nu G for every sample past t* plus the pointwise
/// energy bound e^{-nu kappa0^2 t} ||u0||^2 + nu^2 G^2 (1 - e^{-nu kappa0^2 t}) + 1e-8
/// throughout.  Metrics: t_star, first_entry_time, max_ratio_after_tstar,
/// energy_bound_margin, h1_bound_ratio.
ExperimentReport absorbing_ball_experiment(const SimState& initial, const PhysParams& params,
                                           const StepperConfig& cfg,
                                           const std::string& out_dir = "");

/// Small-Grashof run: integrates until the full momentum tendency
/// ||du/dt||_L2 drops below `residual_target` (default 1e-9) or t_end.
/// Metrics: grashof, final_residual, reached_at, final_g_sigma.
ExperimentReport steady_convergence_experiment(const SpectralScalar& theta0,
                                               const PhysParams& params, const StepperConfig& cfg,
                                               double epsilon = 0.1,
                                               double residual_target = 1e-9,
                                               const std::string& out_dir = "",
                                               const SpectralVector* u0 = nullptr);

/// Records the (energy, enstrophy, chi, lambda) series and checks:
/// (a) whenever chi > g ||theta0|| / nu, the smoothed d(chi)/dt is negative
///     beyond a 1e-8 dead band;
/// (b) once the trajectory is inside the confining region it never leaves it
///     by more than relative tol 1e-6.
/// Also emits the region boundary (parabola and Poincare line) for plotting.
ExperimentReport energy_enstrophy_trace(const SimState& initial, const PhysParams& params,
                                        const StepperConfig& cfg, const std::string& out_dir = "");

enum class Family { Vertical, Horizontal, PlaneWave, EigenSteady };

/// For each resolution, simulates the family from t = 0 and reports the L^2
/// error against the closed form at t_check; pass requires error < 1e-7 at
/// the largest n and no growth across n above the dt truncation floor.
/// EigenSteady instead checks drift after 10^3 steps < 1e-9.
ExperimentReport exact_family_verification(Family family, const std::vector<int>& resolutions,
                                           double t_check, const PhysParams& params,
                                           const StepperConfig& cfg,
                                           const std::string& out_dir = "");

/// Runs the pair (A, A + perturbation) in lockstep, sampling the
/// backward-uniqueness functionals L(t), I(t) and K(t) = ||A u_B||^2/nu
/// + g ||theta_B||_H3 / 2.  Verifies the separation denominator stays
/// positive, the sampled I(t) stays within the Gronwall envelope
/// I(0) e^{int K} + (1/nu) int e^{int K}, and L(t) stays above
/// L(0) - int(nu I + |II| + 1/2 + |III|), all with 5% quadrature slack.
ExperimentReport backward_uniqueness_probe(const SimState& stateA, double perturbation_scale,
                                           const PhysParams& params, const StepperConfig& cfg,
                                           std::uint64_t seed = 7,
                                           const std::string& out_dir = "");

/// Long informational run: time-averaged dyadic spectra over the trailing
/// `window` fraction, eta, kappa_eta, the G_sigma series and its tail-max
/// estimate.  No pass/fail on the power law.
ExperimentReport turbulence_diagnostics_run(const SpectralScalar& theta0, const PhysParams& params,
                                            const StepperConfig& cfg, double window = 0.25,
                                            const std::string& out_dir = "",
                                            const SpectralVector* u0 = nullptr);

/// A deferred experiment invocation for sweep().
struct SweepJob {
    std::string label;
    std::function<ExperimentReport()> invoke;
};

/// Runs independent experiments concurrently (results independent of the
/// parallelism degree; aggregation order fixed by job order).  Per-job
/// exceptions are isolated into the corresponding report.
std::vector<ExperimentReport> sweep(const std::vector<SweepJob>& jobs, int parallelism);

/// Aggregate CSV (label, G, G_sigma_star, final energy, final enstrophy,
/// lambda-region membership) for a list of reports.
std::string sweep_summary_csv(const std::vector<ExperimentReport>& reports);

}  // namespace sdb::experiments
