#pragma once

#include "sdb/field.hpp"
#include "sdb/params.hpp"

namespace sdb {

/// d/dx_axis by the Fourier symbol i*kappa0*k_axis (axis is 1 or 2).
SpectralScalar derivative(const SpectralScalar& f, int axis);

/// Periodic mean-free inverse Laplacian: divide by -kappa0^2 |k|^2, zero mode
/// stays zero.
SpectralScalar inverse_laplacian(const SpectralScalar& f);

/// -Laplacian (multiply by kappa0^2 |k|^2).
SpectralScalar neg_laplacian(const SpectralScalar& f);
SpectralVector neg_laplacian(const SpectralVector& v);

/// Riesz transform R_i with Fourier symbol i*k_i/|k| (i is 1 or 2).
SpectralScalar riesz(const SpectralScalar& f, int i);

/// Orthogonal projection onto divergence-free fields:
/// u_hat - (k . u_hat) k / |k|^2 per mode.
SpectralVector leray_project(const SpectralVector& v);

/// Solenoidal part of the buoyancy force (0, g*theta), computed from the
/// closed form theta*g - g*grad(d/dx2 invLap theta).  Agrees with
/// leray_project applied to (0, g*theta); the two routes are kept separate on
/// purpose so they can be checked against each other.
SpectralVector buoyancy_projection(const SpectralScalar& theta, const PhysParams& params);

/// Pointwise physical-space product, transformed back and 2/3-truncated.
/// The product of two mean-free fields generally has a mean; it is removed
/// from the result and reported through `mean_out` when given.
SpectralScalar dealiased_product(const SpectralScalar& f, const SpectralScalar& h,
                                 double* mean_out = nullptr);

/// u . grad f for scalar f (dealiased, no projection).
/// Throws NotSolenoidalError if u's solenoidal residual exceeds 1e-10.
SpectralScalar advection(const SpectralVector& u, const SpectralScalar& f);

/// B(u,u) = P_sigma((u . grad) u), dealiased.
SpectralVector momentum_advection(const SpectralVector& u);

// Parseval inner products and norms; the |Omega| = L^2 factor is included so
// box-size dependence matches the dimensional estimates.
double inner_product(const SpectralScalar& f, const SpectralScalar& h);
double inner_product(const SpectralVector& u, const SpectralVector& v);
double norm_l2(const SpectralScalar& f);
double norm_l2(const SpectralVector& u);
/// Homogeneous H^1 seminorm (a norm on mean-free fields).
double norm_h1(const SpectralScalar& f);
double norm_h1(const SpectralVector& u);
/// (sum over modes of (kappa0^2 |k|^2)^s |f_hat|^2 |Omega|)^(1/2).
double norm_hs(const SpectralScalar& f, double s);
double norm_hs(const SpectralVector& u, double s);

/// Max pointwise vector magnitude on the physical grid.
double max_velocity(const SpectralVector& u);

}  // namespace sdb
