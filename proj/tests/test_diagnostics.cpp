#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "sdb/diagnostics.hpp"
#include "sdb/exact_solutions.hpp"
#include "sdb/random_fields.hpp"
#include "support/test_util.hpp"

using namespace sdb;
using namespace sdb::diag;
using testutil::rel_err;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("grashof number formula") {
    PhysParams p{1.0, 1.0, kTwoPi};  // kappa0 = 1
    CHECK(grashof(1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(grashof(0.0, p) == 0.0);
    PhysParams p2{2.0, 1.0, kTwoPi};
    CHECK(rel_err(grashof(1.0, p2), 0.25) < 1e-15);
}

TEST_CASE("solenoidal grashof for the special theta classes") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams p{0.5, 1.2, kTwoPi};

    SpectralScalar theta_v(grid);
    theta_v.set_mode(0, 2, Complex(0.3, 0.1));
    SimState sv(SpectralVector(grid), theta_v, 0.0);
    CHECK(grashof_sigma(sv, p) < 1e-14);

    SpectralScalar theta_h(grid);
    theta_h.set_mode(3, 0, Complex(0.2, -0.4));
    SimState sh(SpectralVector(grid), theta_h, 0.0);
    CHECK(rel_err(grashof_sigma(sh, p), grashof(norm_l2(theta_h), p)) < 1e-13);

    SpectralScalar diag_theta(grid);
    diag_theta.set_mode(1, 1, Complex(-0.25, 0.0));
    diag_theta.set_mode(1, -1, Complex(0.25, 0.0));  // sin(x1) sin(x2)
    SimState sd(SpectralVector(grid), diag_theta, 0.0);
    const double G = grashof(norm_l2(diag_theta), p);
    CHECK(rel_err(grashof_sigma(sd, p), G / std::numbers::sqrt2) < 1e-13);

    // G_sigma <= G for random states
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SpectralScalar theta = random_scalar(grid, seed, 1.0);
        SimState s(SpectralVector(grid), theta, 0.0);
        CHECK(grashof_sigma(s, p) <= grashof(norm_l2(theta), p) + 1e-12);
    }
}

TEST_CASE("effective grashof estimator") {
    std::vector<std::pair<double, double>> flat;
    for (int i = 0; i <= 100; ++i) flat.emplace_back(0.1 * i, 3.5);
    CHECK(effective_grashof(flat).first == 3.5);

    std::vector<std::pair<double, double>> decaying;
    for (int i = 0; i <= 100; ++i) decaying.emplace_back(0.1 * i, std::exp(-0.1 * i));
    const auto [val, window_start] = effective_grashof(decaying, 0.25);
    CHECK(rel_err(window_start, 7.5) < 1e-12);
    CHECK(rel_err(val, std::exp(-7.5)) < 1e-12);

    CHECK_THROWS_AS(effective_grashof({}), EmptySeriesError);
}

TEST_CASE("distribution function of a two-valued field") {
    std::vector<double> values;
    for (int i = 0; i < 128; ++i) values.push_back(i < 64 ? -1.0 : 1.0);
    auto F = distribution_function(values, 201);
    for (std::size_t i = 0; i < F.thresholds.size(); ++i) {
        const double rho = F.thresholds[i];
        const double want = rho < 1.0 ? 0.5 : 1.0;  // thresholds start at -1
        CHECK(F.cdf[i] == want);
    }
    CHECK(F.cdf.front() == 0.5);
    CHECK(F.cdf.back() == 1.0);
}

TEST_CASE("distribution function is translation invariant and monotone") {
    auto grid = make_grid(32, kTwoPi);
    SpectralScalar theta = random_scalar(grid, 7, 1.0);
    auto values = theta.to_physical();

    // grid translation permutes the sample values
    std::vector<double> shifted(values.size());
    const int n = grid->n();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            shifted[grid->flat(i, j)] = values[grid->flat((i + 5) % n, (j + 11) % n)];
        }
    }
    auto Fa = distribution_function(values, 101);
    auto Fb = distribution_function(shifted, 101);
    for (std::size_t i = 0; i < Fa.cdf.size(); ++i) CHECK(Fa.cdf[i] == Fb.cdf[i]);

    for (std::size_t i = 1; i < Fa.cdf.size(); ++i) CHECK(Fa.cdf[i] >= Fa.cdf[i - 1]);
    CHECK(Fa.cdf.back() == 1.0);
    CHECK(Fa.cdf.front() >= 0.0);

    CHECK(ks_distance(values, shifted) == 0.0);
    CHECK(ks_distance(values, values) == 0.0);
}

TEST_CASE("lp norms of a single mode") {
    auto grid = make_grid(32, kTwoPi);
    SpectralScalar s(grid);
    s.set_mode(1, 0, Complex(0.0, -0.5));  // sin(x1); grid hits the extremum
    auto norms = lp_norms(s, {1.0, 2.0, 4.0, kInf});
    CHECK(rel_err(norms[kInf], 1.0) < 1e-13);
    CHECK(rel_err(norms[2.0] * norms[2.0], kTwoPi * kTwoPi / 2.0) < 1e-12);

    // scaling |c| theta
    SpectralScalar s3 = s * -3.0;
    auto norms3 = lp_norms(s3, {1.0, 4.0});
    CHECK(rel_err(norms3[1.0], 3.0 * norms[1.0]) < 1e-12);
    CHECK(rel_err(norms3[4.0], 3.0 * norms[4.0]) < 1e-12);

    CHECK_THROWS_AS(lp_norms(s, {0.5}), ValidationError);
}

TEST_CASE("chi and lambda quotients") {
    auto grid = make_grid(32, kTwoPi);
    SpectralVector u(grid);
    u.x().set_mode(0, 3, Complex(0.0, -0.5));  // single mode |k| = 3
    SimState s(u, SpectralScalar(grid), 0.0);
    auto cl = chi_lambda(s);
    CHECK(!cl.zero_velocity);
    CHECK(rel_err(cl.lambda, 9.0) < 1e-13);
    CHECK(rel_err(cl.chi, 9.0 * norm_l2(u)) < 1e-13);

    SimState rest{SpectralVector(grid), SpectralScalar(grid), 0.0};
    CHECK(chi_lambda(rest).zero_velocity);

    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
        SimState r(random_velocity(grid, seed, 1.0), SpectralScalar(grid), 0.0);
        CHECK(chi_lambda(r).lambda >= 1.0 - 1e-10);
    }
}

TEST_CASE("confinement region membership") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams p{1.0, 1.0, kTwoPi};

    SimState rest(SpectralVector(grid), random_scalar(grid, 21, 1.0), 0.0);
    CHECK(lambda_region_check(rest, 1.0, p, 1e-6));

    // the eigen steady state sits on the parabola boundary
    auto es = exact::eigen_steady_state(2, 0.7, grid, p);
    SimState se(es.u, es.theta, 0.0);
    CHECK(lambda_region_check(se, norm_l2(es.theta), p, 1e-6));

    // a state with twice the parabola enstrophy is outside
    SpectralVector u(grid);
    u.y().set_mode(4, 0, Complex(0.1, 0.0));  // lambda = 16
    const double norm_u = norm_l2(u);
    SimState sv(u, es.theta, 0.0);
    const double theta0 = 16.0 * norm_u * p.nu / p.g / 2.0;
    CHECK(!lambda_region_check(sv, theta0, p, 1e-6));
}

TEST_CASE("energy spectrum shells partition the energy") {
    auto grid = make_grid(64, kTwoPi);
    PhysParams p{0.1, 1.0, kTwoPi};

    SpectralVector single(grid);
    single.x().set_mode(0, 1, Complex(0.0, -0.5));
    SimState s1(single, SpectralScalar(grid), 0.0);
    auto spec1 = energy_spectrum(s1, p);
    CHECK(rel_err(spec1.shell_energy[0], inner_product(single, single)) < 1e-13);
    for (std::size_t b = 1; b < spec1.shell_energy.size(); ++b) CHECK(spec1.shell_energy[b] == 0.0);

    SimState sr(random_velocity(grid, 31, 2.0, 6.0), SpectralScalar(grid), 0.0);
    auto spec = energy_spectrum(sr, p);
    double total = 0.0;
    for (double e : spec.shell_energy) total += e;
    CHECK(rel_err(total, inner_product(sr.u, sr.u)) < 1e-10);
    CHECK(spec.eta > 0.0);
    CHECK(rel_err(std::pow(spec.kappa_eta, 6.0), spec.eta / std::pow(p.nu, 3.0)) < 1e-10);
}

TEST_CASE("synthetic |k|^-2 spectrum shows the -2 band slope") {
    auto grid = make_grid(192, kTwoPi);  // bands up to kappa = 64 fully populated
    PhysParams p{0.1, 1.0, kTwoPi};
    // streamfunction |psi_hat| = |k|^-3 gives |u_hat| = |k|^-2
    SpectralScalar psi(grid);
    const int cut = grid->dealias_cut();
    for (int k1 = 0; k1 <= cut; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -cut); k2 <= cut; ++k2) {
            const double kmag =
                std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            psi.set_mode(k1, k2, Complex(std::pow(kmag, -3.0), 0.0));
        }
    }
    SpectralVector u(derivative(psi, 2) * -1.0, derivative(psi, 1));
    SimState s(u, SpectralScalar(grid), 0.0);
    auto spec = energy_spectrum(s, p);

    // fit log2(e_band) against band index over fully-populated bands away
    // from the lattice-sparse lowest shells
    std::vector<double> xs, ys;
    for (int b = 2; b <= 5; ++b) {
        xs.push_back(b);
        ys.push_back(std::log2(spec.shell_energy[b]));
    }
    double xb = 0.0, yb = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xb += xs[i];
        yb += ys[i];
    }
    xb /= xs.size();
    yb /= ys.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xb) * (ys[i] - yb);
        den += (xs[i] - xb) * (xs[i] - xb);
    }
    const double slope = num / den;
    CHECK(std::abs(slope - (-2.0)) < 0.1);
}

TEST_CASE("pair functionals") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams p{0.1, 2.0, kTwoPi};

    SpectralScalar theta = random_scalar(grid, 41, 1.0);
    SpectralScalar theta_b = theta;
    theta_b.set_mode(1, 0, theta_b.coeff(1, 0) + Complex(0.01, 0.0));
    SimState a(SpectralVector(grid), theta, 0.0);
    SimState b(SpectralVector(grid), theta_b, 0.0);
    auto pf = pair_functionals(a, b, p);
    CHECK(!pf.identical);
    CHECK(pf.I == 0.0);  // du = 0

    SpectralVector du(grid);
    du.x().set_mode(0, 2, Complex(1e-4, 0.0));
    SimState c(du, theta, 0.0);
    SimState d(SpectralVector(grid), theta, 0.0);
    auto pf2 = pair_functionals(c, d, p);
    CHECK(rel_err(pf2.I, 4.0) < 1e-12);  // Dirichlet quotient of mode |k| = 2
    const double denom = inner_product(du, du);
    CHECK(rel_err(pf2.L, -0.5 * std::log(denom)) < 1e-12);

    auto pf3 = pair_functionals(a, a, p);
    CHECK(pf3.identical);
}

TEST_CASE("mean check reports corruption exactly") {
    auto grid = make_grid(32, kTwoPi);
    SimState s(random_velocity(grid, 51, 1.0), random_scalar(grid, 52, 1.0), 0.0);
    auto m = mean_check(s);
    CHECK(m.mean_u1 < 1e-12);
    CHECK(m.mean_u2 < 1e-12);
    CHECK(m.mean_theta < 1e-12);

    s.theta.raw()[0] = Complex(3.25e-5, 0.0);
    CHECK(mean_check(s).mean_theta == 3.25e-5);
}

TEST_CASE("diagnostic record invariants") {
    auto grid = make_grid(32, kTwoPi);
    PhysParams p{0.3, 1.0, kTwoPi};
    for (std::uint64_t seed = 61; seed <= 64; ++seed) {
        SimState s(random_velocity(grid, seed, 1.0), random_scalar(grid, seed + 9, 1.0), 0.0);
        auto rec = compute_record(s, p, norm_l2(s.theta), 0.1);
        CHECK(rec.lambda >= 1.0 - 1e-10);
        CHECK(rec.g_sigma <= grashof(rec.theta_l2, p) + 1e-12);
        CHECK(rec.energy == doctest::Approx(inner_product(s.u, s.u)).epsilon(1e-13));
    }
}
