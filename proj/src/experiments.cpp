#include "sdb/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "sdb/io.hpp"
#include "sdb/random_fields.hpp"

namespace sdb::experiments {

namespace {

constexpr double kResidualDefault = 1e-9;

void write_series_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.good()) throw IoError("cannot open series file: " + path);
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << io::format_double(row[i]);
        }
        out << '\n';
    }
}

std::string series_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / name).string();
}

void put_final_state_metrics(ExperimentReport& rep, const SimState& state,
                             const PhysParams& params, double theta0_l2) {
    const double ul2 = norm_l2(state.u);
    const double uh1 = norm_h1(state.u);
    rep.metrics["grashof"] = diag::grashof(theta0_l2, params);
    rep.metrics["final_energy"] = ul2 * ul2;
    rep.metrics["final_enstrophy"] = uh1 * uh1;
    rep.metrics["in_lambda_region"] =
        diag::lambda_region_check(state, theta0_l2, params, 1e-6) ? 1.0 : 0.0;
}

// least-squares slope over the 5 samples centered at i; the series is assumed
// uniform enough that the LSQ fit damps sampling chatter
double smoothed_slope(const std::vector<double>& t, const std::vector<double>& y, std::size_t i) {
    double tb = 0.0, yb = 0.0;
    for (int o = -2; o <= 2; ++o) {
        tb += t[i + o];
        yb += y[i + o];
    }
    tb /= 5.0;
    yb /= 5.0;
    double num = 0.0, den = 0.0;
    for (int o = -2; o <= 2; ++o) {
        num += (t[i + o] - tb) * (y[i + o] - yb);
        den += (t[i + o] - tb) * (t[i + o] - tb);
    }
    return den > 0.0 ? num / den : 0.0;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y, std::size_t upto) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= upto; ++i) {
        acc += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    }
    return acc;
}

}  // namespace

ExperimentReport absorbing_ball_experiment(const SimState& initial, const PhysParams& params,
                                           const StepperConfig& cfg, const std::string& out_dir) {
    ExperimentReport rep;
    rep.name = "absorbing_ball";
    const double theta0_l2 = norm_l2(initial.theta);
    const double G = diag::grashof(theta0_l2, params);
    if (!(G > 0.0)) throw ValidationError("absorbing ball experiment needs G > 0");
    const double k0 = initial.u.grid().kappa0();
    const double u0_sq = inner_product(initial.u, initial.u);
    const double nu = params.nu;
    const double t_star =
        1.0 / (nu * k0 * k0) * std::max(1.0, std::log(u0_sq / (3.0 * nu * nu * G * G)));
    const double radius = 2.0 * nu * G;
    const double R_r = 2.0 * params.g * theta0_l2 / (nu * k0 * k0);
    const double t1 = 1.0 / (nu * k0 * k0);

    StepperConfig run_cfg = cfg;
    run_cfg.t_end = initial.t + 2.0 * t_star;

    std::vector<std::vector<double>> rows;
    bool inside_after_tstar = true;
    double first_entry = -1.0;
    double max_ratio_after = 0.0;
    double min_bound_margin = std::numeric_limits<double>::infinity();
    double h1_ratio = 0.0;

    std::vector<Sink> sinks;
    sinks.push_back([&](const SimState& s, const RunSample&) {
        const double e = inner_product(s.u, s.u);
        const double norm_u = std::sqrt(e);
        const double dt_rel = s.t - initial.t;
        const double bound = std::exp(-nu * k0 * k0 * dt_rel) * u0_sq +
                             nu * nu * G * G * (1.0 - std::exp(-nu * k0 * k0 * dt_rel)) + 1e-8;
        min_bound_margin = std::min(min_bound_margin, bound - e);
        if (norm_u <= radius && first_entry < 0.0) first_entry = s.t;
        if (dt_rel > t_star) {
            max_ratio_after = std::max(max_ratio_after, norm_u / radius);
            if (norm_u > radius) inside_after_tstar = false;
        }
        if (dt_rel >= t1) {
            h1_ratio = std::max(h1_ratio, norm_h1(s.u) / (R_r * k0));
        }
        rows.push_back({s.t, e, bound, norm_h1(s.u)});
    });

    SimState final_state = run(initial, params, run_cfg, sinks);

    rep.metrics["t_star"] = t_star;
    rep.metrics["first_entry_time"] = first_entry;
    rep.metrics["max_ratio_after_tstar"] = max_ratio_after;
    rep.metrics["energy_bound_margin"] = min_bound_margin;
    rep.metrics["h1_bound_ratio"] = h1_ratio;
    put_final_state_metrics(rep, final_state, params, theta0_l2);
    rep.pass = inside_after_tstar && min_bound_margin >= 0.0;

    if (!out_dir.empty()) {
        const std::string p = series_path(out_dir, "absorbing_ball.csv");
        write_series_csv(p, "t,energy,energy_bound,u_h1", rows);
        rep.series_paths.push_back(p);
    }
    return rep;
}

ExperimentReport steady_convergence_experiment(const SpectralScalar& theta0,
                                               const PhysParams& params, const StepperConfig& cfg,
                                               double epsilon, double residual_target,
                                               const std::string& out_dir,
                                               const SpectralVector* u0) {
    ExperimentReport rep;
    rep.name = "steady_convergence";
    const double theta0_l2 = norm_l2(theta0);
    const double G = diag::grashof(theta0_l2, params);
    if (G > epsilon) {
        throw ValidationError("steady convergence experiment requires G <= epsilon");
    }

    SimState state(u0 ? *u0 : SpectralVector(theta0.grid_ptr()), theta0, 0.0);

    std::vector<double> ts;
    std::vector<double> residuals;
    std::vector<double> g_sigmas;
    std::vector<SpectralVector> u_samples;
    double final_residual = std::numeric_limits<double>::infinity();
    double reached_at = -1.0;

    std::vector<Sink> sinks;
    sinks.push_back([&](const SimState& s, const RunSample&) {
        const double res = norm_l2(rhs_velocity_full(s, params));
        ts.push_back(s.t);
        residuals.push_back(res);
        g_sigmas.push_back(diag::grashof_sigma(s, params));
        u_samples.push_back(s.u);
        final_residual = res;
        if (res < residual_target && reached_at < 0.0) reached_at = s.t;
    });

    SimState final_state = run_until(std::move(state), params, cfg, sinks,
                                     [&](const SimState&) { return reached_at >= 0.0; });

    rep.metrics["final_residual"] = final_residual;
    rep.metrics["reached_at"] = reached_at;
    rep.metrics["final_g_sigma"] = g_sigmas.empty() ? 0.0 : g_sigmas.back();
    put_final_state_metrics(rep, final_state, params, theta0_l2);
    rep.pass = reached_at >= 0.0;
    if (!rep.pass) rep.error = "NotConverged: residual " + io::format_double(final_residual);

    if (!out_dir.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            SpectralVector d = u_samples[i];
            d -= final_state.u;
            rows.push_back({ts[i], residuals[i], norm_l2(d), g_sigmas[i]});
        }
        const std::string p = series_path(out_dir, "steady_convergence.csv");
        write_series_csv(p, "t,residual,dist_to_final,g_sigma", rows);
        rep.series_paths.push_back(p);
    }
    return rep;
}

ExperimentReport energy_enstrophy_trace(const SimState& initial, const PhysParams& params,
                                        const StepperConfig& cfg, const std::string& out_dir) {
    ExperimentReport rep;
    rep.name = "energy_enstrophy_trace";
    const double theta0_l2 = norm_l2(initial.theta);
    const double chi_threshold = params.g * theta0_l2 / params.nu;
    const double k0 = initial.u.grid().kappa0();
    constexpr double dead_band = 1e-8;
    constexpr double region_tol = 1e-6;

    std::vector<double> ts, energies, enstrophies, chis, lambdas;
    std::vector<bool> in_region;

    std::vector<Sink> sinks;
    sinks.push_back([&](const SimState& s, const RunSample&) {
        const diag::ChiLambda cl = diag::chi_lambda(s);
        ts.push_back(s.t);
        const double ul2 = norm_l2(s.u);
        const double uh1 = norm_h1(s.u);
        energies.push_back(ul2 * ul2);
        enstrophies.push_back(uh1 * uh1);
        chis.push_back(cl.chi);
        lambdas.push_back(cl.lambda);
        in_region.push_back(diag::lambda_region_check(s, theta0_l2, params, region_tol));
    });

    SimState final_state = run(initial, params, cfg, sinks);

    // (a) chi must not increase while above the parabola level
    bool chi_decreases = true;
    double worst_slope = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 2; i + 2 < ts.size(); ++i) {
        bool window_ok = true;
        for (int o = -2; o <= 2; ++o) {
            if (!std::isfinite(chis[i + o])) window_ok = false;
        }
        if (!window_ok) continue;
        if (chis[i] <= chi_threshold * (1.0 + 1e-9)) continue;
        const double slope = smoothed_slope(ts, chis, i);
        worst_slope = std::max(worst_slope, slope);
        if (slope >= dead_band) chi_decreases = false;
    }

    // (b) confinement after first entry
    double entry_time = -1.0;
    double max_excess = 0.0;
    bool confined = true;
    std::size_t entry_idx = ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (in_region[i]) {
            entry_time = ts[i];
            entry_idx = i;
            break;
        }
    }
    for (std::size_t i = entry_idx; i < ts.size(); ++i) {
        const double parabola = chi_threshold * std::sqrt(energies[i]);
        if (parabola <= 0.0) continue;
        const double excess = (enstrophies[i] - parabola) / parabola;
        max_excess = std::max(max_excess, excess);
        if (excess > region_tol) confined = false;
    }

    // Poincare floor, exact as a spectral mode sum
    double min_lambda_ratio = std::numeric_limits<double>::infinity();
    for (double lam : lambdas) {
        if (std::isfinite(lam)) min_lambda_ratio = std::min(min_lambda_ratio, lam / (k0 * k0));
    }
    const bool poincare_ok = !(min_lambda_ratio < 1.0 - 1e-12);

    rep.metrics["entry_time"] = entry_time;
    rep.metrics["max_excess_after_entry"] = max_excess;
    rep.metrics["worst_chi_slope_above"] = worst_slope;
    rep.metrics["min_lambda_ratio"] = min_lambda_ratio;
    rep.metrics["chi_threshold"] = chi_threshold;
    put_final_state_metrics(rep, final_state, params, theta0_l2);
    rep.pass = chi_decreases && confined && entry_idx < ts.size() && poincare_ok;

    if (!out_dir.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            rows.push_back({ts[i], energies[i], enstrophies[i], chis[i], lambdas[i],
                            in_region[i] ? 1.0 : 0.0});
        }
        const std::string p = series_path(out_dir, "energy_enstrophy.csv");
        write_series_csv(p, "t,energy,enstrophy,chi,lambda,in_region", rows);
        rep.series_paths.push_back(p);

        // region boundary for plotting: parabola and Poincare line
        std::vector<std::vector<double>> region;
        const double emax = *std::max_element(energies.begin(), energies.end());
        const int samples = 200;
        for (int i = 0; i <= samples; ++i) {
            const double e = emax * i / samples;
            const double norm_u = std::sqrt(e);
            region.push_back({e, chi_threshold * norm_u, k0 * k0 * e});
        }
        const std::string rp = series_path(out_dir, "energy_enstrophy_region.csv");
        write_series_csv(rp, "energy,parabola_enstrophy,poincare_enstrophy", region);
        rep.series_paths.push_back(rp);
    }
    return rep;
}

ExperimentReport exact_family_verification(Family family, const std::vector<int>& resolutions,
                                           double t_check, const PhysParams& params,
                                           const StepperConfig& cfg, const std::string& out_dir) {
    using namespace sdb::exact;
    ExperimentReport rep;
    constexpr double error_gate = 1e-7;
    constexpr double drift_gate = 1e-9;
    constexpr double dt_floor = 1e-9;  // below this, spatial refinement cannot help

    const char* names[] = {"vertical", "horizontal", "plane_wave", "eigen_steady"};
    rep.name = std::string("exact_family_") + names[static_cast<int>(family)];

    std::vector<std::vector<double>> rows;
    std::vector<double> errors;

    for (int n : resolutions) {
        GridPtr grid = make_grid(n, params.box_len);
        double err = 0.0;
        if (family == Family::EigenSteady) {
            EigenSteadyState s0 = eigen_steady_state(1, 1.0, grid, params);
            SimState state(s0.u, s0.theta, 0.0);
            StepperConfig run_cfg = cfg;
            run_cfg.t_end = 1000.0 * cfg.dt;
            SimState final_state = run(state, params, run_cfg, {});
            SpectralVector du = final_state.u;
            du -= s0.u;
            SpectralScalar dth = final_state.theta;
            dth -= s0.theta;
            err = std::max(norm_l2(du), norm_l2(dth));
        } else {
            auto family_state = [&](double t) {
                switch (family) {
                    case Family::Vertical: {
                        auto aV = Profile1D::sine(ProfileAxis::X2, 1, 1.0);
                        auto thetaV = Profile1D::cosine(ProfileAxis::X2, 1, 1.0);
                        return vertical_solution(aV, thetaV, grid, params, t);
                    }
                    case Family::Horizontal: {
                        auto aH = Profile1D::sine(ProfileAxis::X1, 1, 1.0);
                        auto thetaH = Profile1D::cosine(ProfileAxis::X1, 1, 1.0);
                        return horizontal_solution(aH, thetaH, grid, params, t);
                    }
                    default: {
                        WaveVector k(1, -1);
                        auto h = Profile1D::cosine(ProfileAxis::Z, 1, 1.0);
                        auto f0 = Profile1D::sine(ProfileAxis::Z, 1, 1.0);
                        return plane_wave_solution(h, k, f0, grid, params, t);
                    }
                }
            };
            ExactState s0 = family_state(0.0);
            SimState state(s0.u, s0.theta, 0.0);
            StepperConfig run_cfg = cfg;
            run_cfg.t_end = t_check;
            SimState final_state = run(state, params, run_cfg, {});
            ExactState ref = family_state(t_check);
            SpectralVector du = final_state.u;
            du -= ref.u;
            SpectralScalar dth = final_state.theta;
            dth -= ref.theta;
            err = std::max(norm_l2(du), norm_l2(dth));
        }
        errors.push_back(err);
        rows.push_back({static_cast<double>(n), err});
        rep.metrics["error_n" + std::to_string(n)] = err;
    }

    bool pass;
    if (family == Family::EigenSteady) {
        pass = std::all_of(errors.begin(), errors.end(),
                           [&](double e) { return e < drift_gate; });
    } else {
        pass = errors.back() < error_gate;
        for (std::size_t i = 1; i < errors.size(); ++i) {
            if (errors[i] > std::max(errors[i - 1] * 1.05, dt_floor)) pass = false;
        }
    }
    rep.metrics["final_error"] = errors.back();
    rep.pass = pass;

    if (!out_dir.empty()) {
        const std::string p = series_path(out_dir, rep.name + ".csv");
        write_series_csv(p, "n,l2_error", rows);
        rep.series_paths.push_back(p);
    }
    return rep;
}

ExperimentReport backward_uniqueness_probe(const SimState& stateA, double perturbation_scale,
                                           const PhysParams& params, const StepperConfig& cfg,
                                           std::uint64_t seed, const std::string& out_dir) {
    ExperimentReport rep;
    rep.name = "backward_uniqueness_probe";
    if (!(perturbation_scale >= 0.0)) {
        throw ValidationError("perturbation scale must be non-negative");
    }
    GridPtr grid = stateA.u.grid_ptr();

    SimState stateB = stateA;
    if (perturbation_scale > 0.0) {
        stateB.u += random_velocity(grid, seed, perturbation_scale);
        stateB.theta += random_scalar(grid, seed + 1, perturbation_scale);
    }

    {
        const diag::PairFunctionals p0 = diag::pair_functionals(stateA, stateB, params);
        if (p0.identical) {
            throw IdenticalStatesError("perturbation vanished; the pair is coincident at t = 0");
        }
    }

    StepperConfig pair_cfg = cfg;
    pair_cfg.adaptive = false;  // the pair must share one step sequence

    std::vector<double> ts, Ls, Is, Ks, IIs, IIIs, denominators;
    SimState a = stateA;
    SimState b = stateB;

    auto sample = [&]() {
        const diag::PairFunctionals p = diag::pair_functionals(a, b, params);
        SpectralVector du = a.u;
        du -= b.u;
        SpectralScalar dth = a.theta;
        dth -= b.theta;
        const double denom = inner_product(du, du) +
                             params.g * params.g * inner_product(dth, dth);
        const double K = norm_hs(b.u, 2.0) * norm_hs(b.u, 2.0) / params.nu +
                         params.g * norm_hs(b.theta, 3.0) / 2.0;
        // II and III are the actual quotients from the difference system
        const double ii =
            (inner_product(advection(du, b.u.x()), du.x()) +
             inner_product(advection(du, b.u.y()), du.y())) /
            denom;
        const double iii =
            params.g * params.g * inner_product(advection(du, b.theta), dth) / denom;
        ts.push_back(a.t);
        Ls.push_back(p.L);
        Is.push_back(p.I);
        Ks.push_back(K);
        IIs.push_back(ii);
        IIIs.push_back(iii);
        denominators.push_back(denom);
    };

    sample();
    long step_count = 0;
    while (a.t < cfg.t_end) {
        StepperConfig one = pair_cfg;
        one.dt = std::min(pair_cfg.dt, cfg.t_end - a.t);
        a = step(a, params, one);
        b = step(b, params, one);
        ++step_count;
        if (step_count % cfg.sample_every == 0 || a.t >= cfg.t_end) sample();
    }

    // Gronwall envelope for I(t):
    //   I(t) <= I(0) e^{int_0^t K} + (1/nu) int_0^t e^{int_s^t K} ds
    // with the integrals taken by trapezoid over the samples.
    bool denom_positive = true;
    double min_denom = std::numeric_limits<double>::infinity();
    bool I_ok = true;
    double I_margin = std::numeric_limits<double>::infinity();
    bool L_ok = true;
    double L_margin = std::numeric_limits<double>::infinity();
    constexpr double slack = 1.05;

    std::vector<double> cumK(ts.size(), 0.0);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        cumK[i] = cumK[i - 1] + 0.5 * (Ks[i] + Ks[i - 1]) * (ts[i] - ts[i - 1]);
    }
    std::vector<double> expneg(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) expneg[i] = std::exp(-cumK[i]);
    std::vector<double> lower_rate(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        lower_rate[i] = params.nu * Is[i] + std::abs(IIs[i]) + 0.5 + std::abs(IIIs[i]);
    }

    for (std::size_t i = 0; i < ts.size(); ++i) {
        min_denom = std::min(min_denom, denominators[i]);
        if (denominators[i] < 1e-28) denom_positive = false;

        const double inner = trapezoid(ts, expneg, i);
        const double envelope = (Is[0] + inner / params.nu) * std::exp(cumK[i]) * slack + 1e-30;
        if (Is[i] > envelope) I_ok = false;
        I_margin = std::min(I_margin, envelope / std::max(Is[i], 1e-300));

        const double allowed_drop = slack * trapezoid(ts, lower_rate, i);
        const double lower = Ls[0] - allowed_drop;
        if (Ls[i] < lower - 1e-12) L_ok = false;
        L_margin = std::min(L_margin, Ls[i] - lower);
    }

    rep.metrics["I0"] = Is[0];
    rep.metrics["min_denominator"] = min_denom;
    rep.metrics["I_margin"] = I_margin;
    rep.metrics["L_margin"] = L_margin;
    put_final_state_metrics(rep, a, params, norm_l2(stateA.theta));
    rep.pass = denom_positive && I_ok && L_ok;

    if (!out_dir.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            rows.push_back({ts[i], Ls[i], Is[i], Ks[i], denominators[i]});
        }
        const std::string p = series_path(out_dir, "backward_uniqueness.csv");
        write_series_csv(p, "t,L,I,K,denominator", rows);
        rep.series_paths.push_back(p);
    }
    return rep;
}

ExperimentReport turbulence_diagnostics_run(const SpectralScalar& theta0, const PhysParams& params,
                                            const StepperConfig& cfg, double window,
                                            const std::string& out_dir,
                                            const SpectralVector* u0) {
    ExperimentReport rep;
    rep.name = "turbulence_diagnostics";
    const double theta0_l2 = norm_l2(theta0);

    SimState state(u0 ? *u0 : SpectralVector(theta0.grid_ptr()), theta0, 0.0);
    const double t0 = state.t;
    const double window_start = t0 + (1.0 - window) * (cfg.t_end - t0);

    std::vector<std::pair<double, double>> g_sigma_series;
    std::vector<double> eta_series;
    std::vector<double> avg_shells;
    std::vector<double> shell_edges;
    long averaged_samples = 0;
    double eta_avg = 0.0;
    double spectrum_energy_gap = 0.0;

    std::vector<Sink> sinks;
    sinks.push_back([&](const SimState& s, const RunSample&) {
        g_sigma_series.emplace_back(s.t, diag::grashof_sigma(s, params));
        const diag::EnergySpectrum spec = diag::energy_spectrum(s, params);
        eta_series.push_back(spec.eta);
        double total = 0.0;
        for (double e : spec.shell_energy) total += e;
        const double energy = inner_product(s.u, s.u);
        spectrum_energy_gap =
            std::max(spectrum_energy_gap,
                     std::abs(total - energy) / std::max(energy, 1e-300));
        if (s.t >= window_start) {
            if (avg_shells.size() < spec.shell_energy.size()) {
                avg_shells.resize(spec.shell_energy.size(), 0.0);
                shell_edges = spec.shell_edges;
            }
            for (std::size_t b = 0; b < spec.shell_energy.size(); ++b) {
                avg_shells[b] += spec.shell_energy[b];
            }
            eta_avg += spec.eta;
            ++averaged_samples;
        }
    });

    SimState final_state = run(state, params, cfg, sinks);

    if (averaged_samples > 0) {
        for (double& e : avg_shells) e /= static_cast<double>(averaged_samples);
        eta_avg /= static_cast<double>(averaged_samples);
    }
    const auto [g_star, win_start] = diag::effective_grashof(g_sigma_series, window);

    rep.metrics["g_sigma_star"] = g_star;
    rep.metrics["g_sigma_star_window_start"] = win_start;
    rep.metrics["eta_avg"] = eta_avg;
    rep.metrics["kappa_eta_avg"] = std::pow(eta_avg / std::pow(params.nu, 3.0), 1.0 / 6.0);
    rep.metrics["spectrum_energy_gap"] = spectrum_energy_gap;
    put_final_state_metrics(rep, final_state, params, theta0_l2);
    rep.pass = true;  // informational: desk scale has no inertial range

    if (!out_dir.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < g_sigma_series.size(); ++i) {
            rows.push_back({g_sigma_series[i].first, g_sigma_series[i].second, eta_series[i]});
        }
        const std::string p = series_path(out_dir, "turbulence_series.csv");
        write_series_csv(p, "t,g_sigma,eta", rows);
        rep.series_paths.push_back(p);

        std::vector<std::vector<double>> spec_rows;
        for (std::size_t b = 0; b < avg_shells.size(); ++b) {
            spec_rows.push_back({shell_edges[b], avg_shells[b]});
        }
        const std::string sp = series_path(out_dir, "spectrum_avg.csv");
        write_series_csv(sp, "kappa,band_energy_avg", spec_rows);
        rep.series_paths.push_back(sp);
    }
    return rep;
}

std::vector<ExperimentReport> sweep(const std::vector<SweepJob>& jobs, int parallelism) {
    if (parallelism < 1) throw ValidationError("parallelism must be >= 1");
    std::vector<ExperimentReport> reports(jobs.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                reports[i] = jobs[i].invoke();
            } catch (const std::exception& e) {
                reports[i] = ExperimentReport{};
                reports[i].name = jobs[i].label;
                reports[i].pass = false;
                reports[i].error = e.what();
            }
            if (reports[i].params_used.find("label") == reports[i].params_used.end()) {
                reports[i].params_used["label"] = jobs[i].label;
            }
        }
    };

    const int workers = std::min<int>(parallelism, static_cast<int>(jobs.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return reports;
}

std::string sweep_summary_csv(const std::vector<ExperimentReport>& reports) {
    std::string csv =
        "label,grashof,g_sigma_star,final_energy,final_enstrophy,in_lambda_region,pass\n";
    auto metric = [](const ExperimentReport& r, const char* key) {
        const auto it = r.metrics.find(key);
        return it == r.metrics.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
    };
    for (const auto& r : reports) {
        const auto label_it = r.params_used.find("label");
        csv += (label_it == r.params_used.end() ? r.name : label_it->second);
        csv += ',';
        csv += io::format_double(metric(r, "grashof"));
        csv += ',';
        csv += io::format_double(metric(r, "g_sigma_star"));
        csv += ',';
        csv += io::format_double(metric(r, "final_energy"));
        csv += ',';
        csv += io::format_double(metric(r, "final_enstrophy"));
        csv += ',';
        csv += io::format_double(metric(r, "in_lambda_region"));
        csv += ',';
        csv += r.pass ? "1" : "0";
        csv += '\n';
    }
    return csv;
}

}  // namespace sdb::experiments
