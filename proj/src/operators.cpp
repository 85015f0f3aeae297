#include "sdb/operators.hpp"

#include <cmath>

#include "sdb/fft.hpp"

namespace sdb {

namespace {

constexpr double kSolenoidalTol = 1e-10;

void require_same_grid(const Grid& a, const Grid& b) {
    if (!a.compatible(b)) throw ValidationError("fields live on different grids");
}

void require_solenoidal(const SpectralVector& u) {
    const double res = u.solenoidal_residual();
    if (res > kSolenoidalTol) {
        throw NotSolenoidalError("velocity solenoidal residual " + std::to_string(res));
    }
}

// physical samples of a spectral field, kept as complex for reuse by fft
std::vector<Complex> to_physical_complex(const SpectralScalar& f) {
    std::vector<Complex> work(f.raw());
    fft::backward(f.grid().n(), work.data());
    return work;
}

}  // namespace

SpectralScalar derivative(const SpectralScalar& f, int axis) {
    if (axis != 1 && axis != 2) throw ValidationError("axis must be 1 or 2");
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralScalar out(f.grid_ptr());
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            const double k = g.kappa0() * (axis == 1 ? k1 : k2);
            out.raw()[g.flat(i, j)] = Complex(0.0, k) * f.raw()[g.flat(i, j)];
        }
    }
    return out;
}

SpectralScalar inverse_laplacian(const SpectralScalar& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralScalar out(f.grid_ptr());
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            if (k1 == 0 && k2 == 0) continue;
            out.raw()[g.flat(i, j)] = f.raw()[g.flat(i, j)] / (-g.ksq(k1, k2));
        }
    }
    return out;
}

SpectralScalar neg_laplacian(const SpectralScalar& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralScalar out(f.grid_ptr());
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            out.raw()[g.flat(i, j)] = g.ksq(k1, k2) * f.raw()[g.flat(i, j)];
        }
    }
    return out;
}

SpectralVector neg_laplacian(const SpectralVector& v) {
    return SpectralVector(neg_laplacian(v.x()), neg_laplacian(v.y()));
}

SpectralScalar riesz(const SpectralScalar& f, int i) {
    if (i != 1 && i != 2) throw ValidationError("Riesz index must be 1 or 2");
    const Grid& g = f.grid();
    const int n = g.n();
    SpectralScalar out(f.grid_ptr());
    for (int a = 0; a < n; ++a) {
        const int k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            const int k2 = g.wavenumber(b);
            if (k1 == 0 && k2 == 0) continue;
            const double kmag = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            const double ki = (i == 1 ? k1 : k2);
            out.raw()[g.flat(a, b)] = Complex(0.0, ki / kmag) * f.raw()[g.flat(a, b)];
        }
    }
    return out;
}

SpectralVector leray_project(const SpectralVector& v) {
    const Grid& g = v.grid();
    const int n = g.n();
    SpectralVector out(v.grid_ptr());
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            const std::size_t idx = g.flat(i, j);
            if (k1 == 0 && k2 == 0) continue;
            const Complex vx = v.x().raw()[idx];
            const Complex vy = v.y().raw()[idx];
            const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const Complex kdotv = (static_cast<double>(k1) * vx + static_cast<double>(k2) * vy) / kk;
            out.x().raw()[idx] = vx - kdotv * static_cast<double>(k1);
            out.y().raw()[idx] = vy - kdotv * static_cast<double>(k2);
        }
    }
    return out;
}

SpectralVector buoyancy_projection(const SpectralScalar& theta, const PhysParams& params) {
    // P(theta g) = theta g - g grad(d/dx2 invLap theta)
    SpectralScalar phi = derivative(inverse_laplacian(theta), 2);
    SpectralScalar fx = derivative(phi, 1);
    SpectralScalar fy = derivative(phi, 2);
    fx *= -params.g;
    fy *= -params.g;
    fy.add_scaled(theta, params.g);
    return SpectralVector(std::move(fx), std::move(fy));
}

SpectralScalar dealiased_product(const SpectralScalar& f, const SpectralScalar& h,
                                 double* mean_out) {
    require_same_grid(f.grid(), h.grid());
    const int n = f.grid().n();
    std::vector<Complex> pf = to_physical_complex(f);
    std::vector<Complex> ph = to_physical_complex(h);
    for (std::size_t i = 0; i < pf.size(); ++i) {
        pf[i] = Complex(pf[i].real() * ph[i].real(), 0.0);
    }
    fft::forward(n, pf.data());
    if (mean_out) *mean_out = pf[0].real();
    SpectralScalar out(f.grid_ptr());
    out.raw() = std::move(pf);
    out.enforce();
    return out;
}

namespace {

// u . grad f with the physical velocity samples supplied by the caller, so
// the two advection entries can share transforms.
SpectralScalar advect_with(const std::vector<Complex>& ux, const std::vector<Complex>& uy,
                           const SpectralScalar& f) {
    const int n = f.grid().n();
    std::vector<Complex> dfx = to_physical_complex(derivative(f, 1));
    std::vector<Complex> dfy = to_physical_complex(derivative(f, 2));
    for (std::size_t i = 0; i < dfx.size(); ++i) {
        dfx[i] = Complex(ux[i].real() * dfx[i].real() + uy[i].real() * dfy[i].real(), 0.0);
    }
    fft::forward(n, dfx.data());
    SpectralScalar out(f.grid_ptr());
    out.raw() = std::move(dfx);
    out.enforce();
    return out;
}

}  // namespace

SpectralScalar advection(const SpectralVector& u, const SpectralScalar& f) {
    require_same_grid(u.grid(), f.grid());
    require_solenoidal(u);
    return advect_with(to_physical_complex(u.x()), to_physical_complex(u.y()), f);
}

SpectralVector momentum_advection(const SpectralVector& u) {
    require_solenoidal(u);
    std::vector<Complex> ux = to_physical_complex(u.x());
    std::vector<Complex> uy = to_physical_complex(u.y());
    SpectralVector conv(advect_with(ux, uy, u.x()), advect_with(ux, uy, u.y()));
    return leray_project(conv);
}

namespace {

double mode_sum(const SpectralScalar& f, const SpectralScalar& h, double s) {
    const Grid& g = f.grid();
    const int n = g.n();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            if (k1 == 0 && k2 == 0) continue;
            const std::size_t idx = g.flat(i, j);
            const double re =
                f.raw()[idx].real() * h.raw()[idx].real() + f.raw()[idx].imag() * h.raw()[idx].imag();
            if (re == 0.0) continue;
            const double w = (s == 0.0) ? 1.0 : std::pow(g.ksq(k1, k2), s);
            acc += w * re;
        }
    }
    return acc * g.area();
}

}  // namespace

double inner_product(const SpectralScalar& f, const SpectralScalar& h) {
    require_same_grid(f.grid(), h.grid());
    return mode_sum(f, h, 0.0);
}

double inner_product(const SpectralVector& u, const SpectralVector& v) {
    return inner_product(u.x(), v.x()) + inner_product(u.y(), v.y());
}

double norm_l2(const SpectralScalar& f) { return std::sqrt(mode_sum(f, f, 0.0)); }

double norm_l2(const SpectralVector& u) {
    return std::sqrt(mode_sum(u.x(), u.x(), 0.0) + mode_sum(u.y(), u.y(), 0.0));
}

double norm_h1(const SpectralScalar& f) { return std::sqrt(mode_sum(f, f, 1.0)); }

double norm_h1(const SpectralVector& u) {
    return std::sqrt(mode_sum(u.x(), u.x(), 1.0) + mode_sum(u.y(), u.y(), 1.0));
}

double norm_hs(const SpectralScalar& f, double s) { return std::sqrt(mode_sum(f, f, s)); }

double norm_hs(const SpectralVector& u, double s) {
    return std::sqrt(mode_sum(u.x(), u.x(), s) + mode_sum(u.y(), u.y(), s));
}

double max_velocity(const SpectralVector& u) {
    std::vector<double> ux = u.x().to_physical();
    std::vector<double> uy = u.y().to_physical();
    double m = 0.0;
    for (std::size_t i = 0; i < ux.size(); ++i) {
        m = std::max(m, std::hypot(ux[i], uy[i]));
    }
    return m;
}

}  // namespace sdb
