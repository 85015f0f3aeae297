#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sdb/dynamics.hpp"
#include "sdb/field.hpp"
#include "sdb/params.hpp"

namespace sdb::diag {

/// One sampled row of scalar diagnostics.
struct DiagRecord {
    double t = 0.0;
    double energy = 0.0;     // ||u||_L2^2
    double enstrophy = 0.0;  // ||u||_H1^2
    double theta_l2 = 0.0;
    double theta_l1 = 0.0;
    double theta_l4 = 0.0;
    double theta_linf = 0.0;
    double g_sigma = 0.0;
    double chi = 0.0;     // nan when ||u|| ~ 0
    double lambda = 0.0;  // nan when ||u|| ~ 0
    double mean_u1 = 0.0;
    double mean_u2 = 0.0;
    double mean_theta = 0.0;
    bool in_lambda_region = false;
    double cfl = 0.0;
};

/// Empirical distribution function of the grid values: fraction of points
/// with theta(x) <= rho at equispaced thresholds spanning [min, max].
struct DistributionFunction {
    std::vector<double> thresholds;
    std::vector<double> cdf;
};

/// Dyadic shell decomposition of the kinetic energy plus the enstrophy
/// dissipation scales: eta = 2 nu ||A u||^2, kappa_eta = (eta/nu^3)^(1/6).
struct EnergySpectrum {
    std::vector<double> shell_edges;   // left edge of each band [kappa, 2 kappa)
    std::vector<double> shell_energy;  // band sums of |u_hat|^2 |Omega|
    double eta = 0.0;
    double kappa_eta = 0.0;
};

/// G = g ||theta0||_L2 / (nu^2 kappa0^2); dimensionless, time-independent.
double grashof(double theta0_l2, const PhysParams& params);

/// G_sigma(t) = ||P_sigma(g theta)(t)||_L2 / (nu^2 kappa0^2).
double grashof_sigma(const SimState& state, const PhysParams& params);

/// Tail-max estimator of limsup G_sigma: the maximum over the trailing
/// `window_fraction` of the time window.  Returns {value, window_start}.
std::pair<double, double> effective_grashof(const std::vector<std::pair<double, double>>& series,
                                            double window_fraction = 0.25);

DistributionFunction distribution_function(const std::vector<double>& values, int n_thresholds);
DistributionFunction distribution_function(const SpectralScalar& theta, int n_thresholds);

/// Exact two-sample Kolmogorov-Smirnov distance between the empirical
/// distributions of the two grids of values.
double ks_distance(const std::vector<double>& a, const std::vector<double>& b);
double ks_distance(const SpectralScalar& a, const SpectralScalar& b);

/// Physical-space quadrature L^p norms; p = infinity is the grid max.
std::map<double, double> lp_norms(const SpectralScalar& theta, const std::vector<double>& ps);

struct ChiLambda {
    double chi = 0.0;
    double lambda = 0.0;
    bool zero_velocity = false;
};
/// chi = ||u||_H1^2 / ||u||_L2 and lambda = ||u||_H1^2 / ||u||_L2^2;
/// flagged null when ||u||_L2 <= 1e-14.
ChiLambda chi_lambda(const SimState& state);

/// True iff the state lies in the confining region: enstrophy below the
/// parabola (g ||theta0|| / nu) ||u|| within relative tol, and the Poincare
/// side lambda >= kappa0^2 (exact in the spectral representation).
bool lambda_region_check(const SimState& state, double theta0_l2, const PhysParams& params,
                         double tol);

EnergySpectrum energy_spectrum(const SimState& state, const PhysParams& params);

struct PairFunctionals {
    double L = 0.0;  // -1/2 log(||du||^2 + g^2 ||dtheta||^2)
    double I = 0.0;  // ||du||_H1^2 / (||du||^2 + g^2 ||dtheta||^2)
    bool identical = false;
};
/// Functionals of the difference of two trajectories at equal times; flags
/// rather than aborts when the separation denominator vanishes (< 1e-28).
PairFunctionals pair_functionals(const SimState& a, const SimState& b, const PhysParams& params);

struct MeanCheck {
    double mean_u1 = 0.0;
    double mean_u2 = 0.0;
    double mean_theta = 0.0;
};
MeanCheck mean_check(const SimState& state);

/// Assembles the full diagnostic row; theta0_l2 fixes the Grashof scale and
/// the confinement parabola.
DiagRecord compute_record(const SimState& state, const PhysParams& params, double theta0_l2,
                          double cfl, double lambda_tol = 1e-6);

}  // namespace sdb::diag
