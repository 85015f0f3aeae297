#include "sdb/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sdb/operators.hpp"

namespace sdb::diag {

double grashof(double theta0_l2, const PhysParams& params) {
    params.validate();
    const double k0 = 2.0 * std::numbers::pi / params.box_len;
    return params.g * theta0_l2 / (params.nu * params.nu * k0 * k0);
}

double grashof_sigma(const SimState& state, const PhysParams& params) {
    const double k0 = state.u.grid().kappa0();
    return norm_l2(buoyancy_projection(state.theta, params)) /
           (params.nu * params.nu * k0 * k0);
}

std::pair<double, double> effective_grashof(const std::vector<std::pair<double, double>>& series,
                                            double window_fraction) {
    if (series.empty()) throw EmptySeriesError("effective Grashof estimator needs samples");
    const double t0 = series.front().first;
    const double t1 = series.back().first;
    const double window_start = t1 - window_fraction * (t1 - t0);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [t, g] : series) {
        if (t >= window_start) best = std::max(best, g);
    }
    return {best, window_start};
}

DistributionFunction distribution_function(const std::vector<double>& values, int n_thresholds) {
    if (n_thresholds < 1) throw ValidationError("n_thresholds must be >= 1");
    DistributionFunction F;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    if (hi - lo < 1e-300 || n_thresholds == 1) {
        F.thresholds = {hi};
        F.cdf = {1.0};
        return F;
    }
    F.thresholds.resize(n_thresholds);
    F.cdf.resize(n_thresholds);
    const double inv_n = 1.0 / static_cast<double>(sorted.size());
    for (int i = 0; i < n_thresholds; ++i) {
        const double rho = lo + (hi - lo) * i / (n_thresholds - 1);
        F.thresholds[i] = rho;
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), rho);
        F.cdf[i] = static_cast<double>(it - sorted.begin()) * inv_n;
    }
    return F;
}

DistributionFunction distribution_function(const SpectralScalar& theta, int n_thresholds) {
    return distribution_function(theta.to_physical(), n_thresholds);
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    // ties must advance both sides before the CDF gap is recorded
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_distance(const SpectralScalar& a, const SpectralScalar& b) {
    return ks_distance(a.to_physical(), b.to_physical());
}

std::map<double, double> lp_norms(const SpectralScalar& theta, const std::vector<double>& ps) {
    const std::vector<double> values = theta.to_physical();
    const double cell = theta.grid().dx() * theta.grid().dx();
    std::map<double, double> out;
    for (double p : ps) {
        if (std::isinf(p)) {
            double m = 0.0;
            for (double v : values) m = std::max(m, std::abs(v));
            out[p] = m;
        } else if (p >= 1.0) {
            double acc = 0.0;
            for (double v : values) acc += std::pow(std::abs(v), p);
            out[p] = std::pow(acc * cell, 1.0 / p);
        } else {
            throw ValidationError("L^p norms require p >= 1");
        }
    }
    return out;
}

ChiLambda chi_lambda(const SimState& state) {
    const double l2 = norm_l2(state.u);
    if (l2 <= 1e-14) {
        return ChiLambda{std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(), true};
    }
    const double h1_sq = norm_h1(state.u) * norm_h1(state.u);
    return ChiLambda{h1_sq / l2, h1_sq / (l2 * l2), false};
}

bool lambda_region_check(const SimState& state, double theta0_l2, const PhysParams& params,
                         double tol) {
    const double l2 = norm_l2(state.u);
    if (l2 <= 1e-14) return true;  // degenerate point at the origin
    const double h1_sq = norm_h1(state.u) * norm_h1(state.u);
    const double k0 = state.u.grid().kappa0();
    const double parabola = params.g * theta0_l2 / params.nu * l2;
    if (h1_sq > parabola * (1.0 + tol)) return false;
    // Poincare side, exact in the spectral mode sum
    return h1_sq >= k0 * k0 * l2 * l2 * (1.0 - 1e-14);
}

EnergySpectrum energy_spectrum(const SimState& state, const PhysParams& params) {
    const Grid& g = state.u.grid();
    const int n = g.n();
    const double k0 = g.kappa0();

    EnergySpectrum spec;
    const double kappa_max = k0 * g.dealias_cut() * std::numbers::sqrt2;
    int bands = 1;
    while (k0 * std::pow(2.0, bands) <= kappa_max) ++bands;
    spec.shell_edges.resize(bands);
    spec.shell_energy.assign(bands, 0.0);
    for (int b = 0; b < bands; ++b) spec.shell_edges[b] = k0 * std::pow(2.0, b);

    double palinstrophy = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            if (k1 == 0 && k2 == 0) continue;
            const std::size_t idx = g.flat(i, j);
            const double e =
                (std::norm(state.u.x().raw()[idx]) + std::norm(state.u.y().raw()[idx])) * g.area();
            if (e == 0.0) continue;
            const double kappa = k0 * std::sqrt(static_cast<double>(k1) * k1 +
                                                static_cast<double>(k2) * k2);
            int b = static_cast<int>(std::floor(std::log2(kappa / k0)));
            b = std::clamp(b, 0, bands - 1);
            spec.shell_energy[b] += e;
            const double ksq = g.ksq(k1, k2);
            palinstrophy += ksq * ksq *
                            (std::norm(state.u.x().raw()[idx]) + std::norm(state.u.y().raw()[idx])) *
                            g.area();
        }
    }
    spec.eta = 2.0 * params.nu * palinstrophy;
    spec.kappa_eta = std::pow(spec.eta / std::pow(params.nu, 3.0), 1.0 / 6.0);
    return spec;
}

PairFunctionals pair_functionals(const SimState& a, const SimState& b, const PhysParams& params) {
    if (!a.u.grid().compatible(b.u.grid())) {
        throw ValidationError("pair functionals need states on the same grid");
    }
    if (a.t != b.t) {
        throw ValidationError("pair functionals need states at the same time");
    }
    SpectralVector du = a.u;
    du -= b.u;
    SpectralScalar dth = a.theta;
    dth -= b.theta;
    const double du_sq = inner_product(du, du);
    const double dth_sq = inner_product(dth, dth);
    const double denom = du_sq + params.g * params.g * dth_sq;
    if (denom < 1e-28) {
        return PairFunctionals{0.0, 0.0, true};
    }
    const double h1_sq = norm_h1(du) * norm_h1(du);
    return PairFunctionals{-0.5 * std::log(denom), h1_sq / denom, false};
}

MeanCheck mean_check(const SimState& state) {
    return MeanCheck{std::abs(state.u.x().raw()[0]), std::abs(state.u.y().raw()[0]),
                     std::abs(state.theta.raw()[0])};
}

DiagRecord compute_record(const SimState& state, const PhysParams& params, double theta0_l2,
                          double cfl, double lambda_tol) {
    DiagRecord r;
    r.t = state.t;
    const double ul2 = norm_l2(state.u);
    const double uh1 = norm_h1(state.u);
    r.energy = ul2 * ul2;
    r.enstrophy = uh1 * uh1;
    r.theta_l2 = norm_l2(state.theta);
    const double inf = std::numeric_limits<double>::infinity();
    auto lp = lp_norms(state.theta, {1.0, 4.0, inf});
    r.theta_l1 = lp[1.0];
    r.theta_l4 = lp[4.0];
    r.theta_linf = lp[inf];
    r.g_sigma = grashof_sigma(state, params);
    const ChiLambda cl = chi_lambda(state);
    r.chi = cl.chi;
    r.lambda = cl.lambda;
    const MeanCheck m = mean_check(state);
    r.mean_u1 = m.mean_u1;
    r.mean_u2 = m.mean_u2;
    r.mean_theta = m.mean_theta;
    r.in_lambda_region = lambda_region_check(state, theta0_l2, params, lambda_tol);
    r.cfl = cfl;
    return r;
}

}  // namespace sdb::diag
