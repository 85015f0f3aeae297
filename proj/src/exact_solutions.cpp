#include "sdb/exact_solutions.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sdb::exact {

Profile1D::Profile1D(ProfileAxis axis, int max_mode) : axis_(axis) {
    if (max_mode < 0) throw ValidationError("max_mode must be non-negative");
    coeffs_.assign(static_cast<std::size_t>(max_mode) + 1, Complex(0.0, 0.0));
}

Profile1D Profile1D::sine(ProfileAxis axis, int mode, double amplitude) {
    Profile1D p(axis, mode);
    p.set_coeff(mode, Complex(0.0, -0.5 * amplitude));
    return p;
}

Profile1D Profile1D::cosine(ProfileAxis axis, int mode, double amplitude) {
    Profile1D p(axis, mode);
    p.set_coeff(mode, Complex(0.5 * amplitude, 0.0));
    return p;
}

Profile1D Profile1D::random(ProfileAxis axis, int max_mode, double m_peak, double norm,
                            std::uint64_t seed, double box_len) {
    Profile1D p(axis, max_mode);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    double sum_sq = 0.0;
    for (int m = 1; m <= max_mode; ++m) {
        const double amp = m * std::exp(-static_cast<double>(m) * m / (m_peak * m_peak));
        const double ph = phase(rng);
        p.coeffs_[m] = 0.5 * amp * Complex(std::cos(ph), std::sin(ph));
        sum_sq += 2.0 * std::norm(p.coeffs_[m]);
    }
    // ||f||_L2^2 on the box = |Omega| * sum of squared lattice coefficients
    const double current = std::sqrt(sum_sq * box_len * box_len);
    if (current > 0.0 && norm > 0.0) {
        const double scale = norm / current;
        for (auto& c : p.coeffs_) c *= scale;
    }
    return p;
}

void Profile1D::set_coeff(int m, Complex c) {
    if (m < 1 || m > max_mode()) throw ValidationError("profile mode out of range");
    coeffs_[m] = c;
}

bool Profile1D::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != Complex(0.0, 0.0)) return false;
    }
    return true;
}

WaveVector::WaveVector(int k1_, int k2_) : k1(k1_), k2(k2_) {
    if (k1 + k2 != 0 || (k1 == 0 && k2 == 0)) {
        throw InvalidWaveVectorError("wave vector must satisfy k1 + k2 == 0 and k != 0");
    }
}

SpectralScalar place_profile(const Profile1D& profile, GridPtr grid, int d1, int d2) {
    SpectralScalar f(grid);
    for (int m = 1; m <= profile.max_mode(); ++m) {
        const Complex c = profile.coeff(m);
        if (c == Complex(0.0, 0.0)) continue;
        if (!grid->retained(m * d1, m * d2)) {
            throw UnresolvableError("profile mode " + std::to_string(m) +
                                    " falls outside the dealias cut");
        }
        f.set_mode(m * d1, m * d2, c);
    }
    return f;
}

namespace {

void require_axis(const Profile1D& p, ProfileAxis expect, const char* name) {
    if (p.axis() != expect) {
        throw AxisMismatchError(std::string(name) + " profile tagged for the wrong coordinate");
    }
}

}  // namespace

ExactState vertical_solution(const Profile1D& aV, const Profile1D& thetaV, GridPtr grid,
                             const PhysParams& params, double t) {
    require_axis(aV, ProfileAxis::X2, "aV");
    require_axis(thetaV, ProfileAxis::X2, "thetaV");
    params.validate();
    const double k0 = grid->kappa0();

    SpectralVector u(grid);
    for (int m = 1; m <= aV.max_mode(); ++m) {
        const Complex c = aV.coeff(m);
        if (c == Complex(0.0, 0.0)) continue;
        const double decay = std::exp(-params.nu * k0 * k0 * m * m * t);
        if (!grid->retained(0, m)) throw UnresolvableError("aV mode beyond dealias cut");
        u.x().set_mode(0, m, decay * c);
    }

    SpectralScalar theta = place_profile(thetaV, grid, 0, 1);

    // hydrostatic balance d/dx2 p = g theta
    SpectralScalar pressure(grid);
    for (int m = 1; m <= thetaV.max_mode(); ++m) {
        const Complex c = thetaV.coeff(m);
        if (c == Complex(0.0, 0.0)) continue;
        pressure.set_mode(0, m, params.g * c / Complex(0.0, k0 * m));
    }
    return ExactState{std::move(u), std::move(theta), std::move(pressure)};
}

ExactState horizontal_solution(const Profile1D& aH, const Profile1D& thetaH, GridPtr grid,
                               const PhysParams& params, double t) {
    require_axis(aH, ProfileAxis::X1, "aH");
    require_axis(thetaH, ProfileAxis::X1, "thetaH");
    params.validate();
    const double k0 = grid->kappa0();

    SpectralVector u(grid);
    const int mmax = std::max(aH.max_mode(), thetaH.max_mode());
    for (int m = 1; m <= mmax; ++m) {
        const Complex a = m <= aH.max_mode() ? aH.coeff(m) : Complex(0.0, 0.0);
        const Complex th = m <= thetaH.max_mode() ? thetaH.coeff(m) : Complex(0.0, 0.0);
        if (a == Complex(0.0, 0.0) && th == Complex(0.0, 0.0)) continue;
        const double lam = params.nu * k0 * k0 * m * m;
        const double decay = std::exp(-lam * t);
        const Complex steady = params.g * th / lam;
        if (!grid->retained(m, 0)) throw UnresolvableError("horizontal mode beyond dealias cut");
        u.y().set_mode(m, 0, decay * a + (1.0 - decay) * steady);
    }

    SpectralScalar theta = place_profile(thetaH, grid, 1, 0);
    SpectralScalar pressure(grid);  // identically zero for this family
    return ExactState{std::move(u), std::move(theta), std::move(pressure)};
}

SpectralVector horizontal_steady(const Profile1D& thetaH, GridPtr grid, const PhysParams& params) {
    require_axis(thetaH, ProfileAxis::X1, "thetaH");
    params.validate();
    const double k0 = grid->kappa0();
    SpectralVector u(grid);
    for (int m = 1; m <= thetaH.max_mode(); ++m) {
        const Complex th = thetaH.coeff(m);
        if (th == Complex(0.0, 0.0)) continue;
        if (!grid->retained(m, 0)) throw UnresolvableError("horizontal mode beyond dealias cut");
        u.y().set_mode(m, 0, params.g * th / (params.nu * k0 * k0 * m * m));
    }
    return u;
}

ExactState plane_wave_solution(const Profile1D& h, const WaveVector& k, const Profile1D& f0,
                               GridPtr grid, const PhysParams& params, double t) {
    require_axis(h, ProfileAxis::Z, "h");
    require_axis(f0, ProfileAxis::Z, "f0");
    params.validate();
    const double k0 = grid->kappa0();
    const double ksq = k.norm_sq();

    SpectralVector u(grid);
    SpectralScalar theta = place_profile(h, grid, k.k1, k.k2);
    SpectralScalar pressure(grid);

    const int mmax = std::max(h.max_mode(), f0.max_mode());
    for (int m = 1; m <= mmax; ++m) {
        const Complex hm = m <= h.max_mode() ? h.coeff(m) : Complex(0.0, 0.0);
        const Complex fm = m <= f0.max_mode() ? f0.coeff(m) : Complex(0.0, 0.0);
        if (hm == Complex(0.0, 0.0) && fm == Complex(0.0, 0.0)) continue;
        if (!grid->retained(m * k.k1, m * k.k2)) {
            throw UnresolvableError("plane-wave mode beyond dealias cut");
        }
        const double lam = params.nu * ksq * k0 * k0 * m * m;
        const double decay = std::exp(-lam * t);
        const Complex steady = 0.5 * params.g * hm / lam;
        const Complex ft = decay * fm + (1.0 - decay) * steady;
        if (ft != Complex(0.0, 0.0)) {
            u.x().set_mode(m * k.k1, m * k.k2, ft);
            u.y().set_mode(m * k.k1, m * k.k2, ft);
        }
        // p = -(g/(2 k1)) H(k.x) with H' = h
        if (hm != Complex(0.0, 0.0)) {
            const Complex Hm = hm / Complex(0.0, k0 * m);
            pressure.set_mode(m * k.k1, m * k.k2, -params.g * Hm / (2.0 * k.k1));
        }
    }
    return ExactState{std::move(u), std::move(theta), std::move(pressure)};
}

Profile1D plane_wave_steady(const Profile1D& h, const WaveVector& k, const PhysParams& params) {
    require_axis(h, ProfileAxis::Z, "h");
    params.validate();
    // f'' = -(g / (2 nu |k|^2)) h, solved per mode
    Profile1D f(ProfileAxis::Z, h.max_mode());
    const double two_pi = 2.0 * std::numbers::pi;
    const double k0 = two_pi / params.box_len;
    for (int m = 1; m <= h.max_mode(); ++m) {
        const Complex hm = h.coeff(m);
        if (hm == Complex(0.0, 0.0)) continue;
        f.set_coeff(m, params.g * hm / (2.0 * params.nu * k.norm_sq() * k0 * k0 * m * m));
    }
    return f;
}

EigenSteadyState eigen_steady_state(int n_mode, double amplitude, GridPtr grid,
                                    const PhysParams& params) {
    params.validate();
    if (n_mode < 1) throw ValidationError("n_mode must be >= 1");
    if (n_mode > grid->dealias_cut()) {
        throw UnresolvableError("n_mode " + std::to_string(n_mode) + " exceeds the dealias cut");
    }
    if (!(params.g > 0.0)) {
        throw ValidationError("eigen steady state requires g > 0");
    }
    const double k0 = grid->kappa0();
    SpectralVector u(grid);
    u.y().set_mode(n_mode, 0, Complex(0.5 * amplitude, 0.0));
    // nu u2'' = -g theta  =>  theta = (nu (n kappa0)^2 / g) u2
    const double ratio = params.nu * (n_mode * k0) * (n_mode * k0) / params.g;
    SpectralScalar theta(grid);
    theta.set_mode(n_mode, 0, Complex(0.5 * amplitude * ratio, 0.0));
    return EigenSteadyState{std::move(u), std::move(theta)};
}

}  // namespace sdb::exact
