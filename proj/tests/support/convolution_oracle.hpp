#pragma once

// Brute-force O(n^4) spectral-space references for the pseudospectral
// products.  Everything here is computed by direct mode summation with its
// own symbols; nothing is shared with the FFT-based implementation so the two
// routes can be compared meaningfully.

#include <complex>

#include "sdb/field.hpp"

namespace oracle {

using sdb::Complex;
using sdb::SpectralScalar;
using sdb::SpectralVector;

/// Direct convolution of two dealiased coefficient sets, truncated back to
/// the retained band, mean removed.
inline SpectralScalar product(const SpectralScalar& f, const SpectralScalar& h) {
    const sdb::Grid& g = f.grid();
    const int cut = g.dealias_cut();
    SpectralScalar out(f.grid_ptr());
    for (int k1 = -cut; k1 <= cut; ++k1) {
        for (int k2 = -cut; k2 <= cut; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            Complex acc(0.0, 0.0);
            for (int m1 = -cut; m1 <= cut; ++m1) {
                for (int m2 = -cut; m2 <= cut; ++m2) {
                    const int r1 = k1 - m1;
                    const int r2 = k2 - m2;
                    if (std::abs(r1) > cut || std::abs(r2) > cut) continue;
                    acc += f.coeff(m1, m2) * h.coeff(r1, r2);
                }
            }
            out.raw()[g.flat(g.index_of(k1), g.index_of(k2))] = acc;
        }
    }
    return out;
}

/// u . grad f by direct convolution of u with the symbol-differentiated f.
inline SpectralScalar advection(const SpectralVector& u, const SpectralScalar& f) {
    const sdb::Grid& g = f.grid();
    const double k0 = g.kappa0();
    SpectralScalar dfx(f.grid_ptr());
    SpectralScalar dfy(f.grid_ptr());
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            const std::size_t idx = g.flat(i, j);
            dfx.raw()[idx] = Complex(0.0, k0 * k1) * f.raw()[idx];
            dfy.raw()[idx] = Complex(0.0, k0 * k2) * f.raw()[idx];
        }
    }
    SpectralScalar out = product(u.x(), dfx);
    out += product(u.y(), dfy);
    return out;
}

/// B(u,u) via the convolution route and an inline projection.
inline SpectralVector b_form(const SpectralVector& u) {
    const sdb::Grid& g = u.grid();
    SpectralScalar cx = oracle::advection(u, u.x());
    SpectralScalar cy = oracle::advection(u, u.y());
    SpectralVector out(u.grid_ptr());
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            if (k1 == 0 && k2 == 0) continue;
            const std::size_t idx = g.flat(i, j);
            const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const Complex kdot =
                (static_cast<double>(k1) * cx.raw()[idx] + static_cast<double>(k2) * cy.raw()[idx]) /
                kk;
            out.x().raw()[idx] = cx.raw()[idx] - kdot * static_cast<double>(k1);
            out.y().raw()[idx] = cy.raw()[idx] - kdot * static_cast<double>(k2);
        }
    }
    return out;
}

}  // namespace oracle
