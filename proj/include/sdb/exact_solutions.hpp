#pragma once

#include <cstdint>
#include <vector>

#include "sdb/field.hpp"
#include "sdb/params.hpp"

namespace sdb::exact {

enum class ProfileAxis { X1, X2, Z };

/// Mean-free L-periodic function of one variable, stored as Fourier
/// coefficients for positive modes (the negative side is the conjugate).
/// value(z) = sum_{m>=1} 2 Re(c_m exp(i kappa0 m z)).
class Profile1D {
  public:
    Profile1D(ProfileAxis axis, int max_mode);

    static Profile1D sine(ProfileAxis axis, int mode, double amplitude);
    static Profile1D cosine(ProfileAxis axis, int mode, double amplitude);
    /// Random smooth profile: modes 1..max_mode with amplitude m*exp(-m^2/m_peak^2)
    /// and seeded phases, then normalized so the L^2 norm on the box is `norm`.
    static Profile1D random(ProfileAxis axis, int max_mode, double m_peak, double norm,
                            std::uint64_t seed, double box_len);

    ProfileAxis axis() const { return axis_; }
    int max_mode() const { return static_cast<int>(coeffs_.size()) - 1; }
    Complex coeff(int m) const { return coeffs_.at(m); }
    void set_coeff(int m, Complex c);
    bool is_zero() const;

  private:
    ProfileAxis axis_;
    std::vector<Complex> coeffs_;  // index m, [0] unused (mean-free)
};

/// Plane-wave direction: integer vector with k1 + k2 == 0, k != 0.
struct WaveVector {
    int k1;
    int k2;
    WaveVector(int k1_, int k2_);
    int abs_k1() const { return k1 < 0 ? -k1 : k1; }
    double norm_sq() const { return static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2; }
};

struct ExactState {
    SpectralVector u;
    SpectralScalar theta;
    SpectralScalar pressure;
};

/// Places a 1D profile onto the 2D lattice along direction d (profile mode m
/// lands on lattice mode m*d).  Throws UnresolvableError when m*d falls
/// outside the dealias cut.
SpectralScalar place_profile(const Profile1D& profile, GridPtr grid, int d1, int d2);

/// u1(x2,t) solves the unforced heat equation from profile aV, u2 = 0,
/// theta = thetaV frozen, pressure from d/dx2 p = g*theta.
ExactState vertical_solution(const Profile1D& aV, const Profile1D& thetaV, GridPtr grid,
                             const PhysParams& params, double t);

/// u1 = 0, u2(x1,t) solves the diffusion problem forced by g*thetaH,
/// theta = thetaH frozen, pressure = 0.
ExactState horizontal_solution(const Profile1D& aH, const Profile1D& thetaH, GridPtr grid,
                               const PhysParams& params, double t);

/// The t -> infinity limit of the horizontal family:
/// u2 per mode m is g*thetaH_m / (nu kappa0^2 m^2).
SpectralVector horizontal_steady(const Profile1D& thetaH, GridPtr grid, const PhysParams& params);

/// u = (f,f)(k.x), theta = h(k.x), with f solving
/// df/dt = nu |k|^2 f_zz + g h / 2 from initial profile f0;
/// pressure gradient is (-g h / 2, g h / 2).
ExactState plane_wave_solution(const Profile1D& h, const WaveVector& k, const Profile1D& f0,
                               GridPtr grid, const PhysParams& params, double t);

/// Steady profile of the plane-wave family:
/// f_m = g h_m / (2 nu |k|^2 kappa0^2 m^2).
Profile1D plane_wave_steady(const Profile1D& h, const WaveVector& k, const PhysParams& params);

/// Columnar steady state on the parabola boundary of the energy-enstrophy
/// region: u1 = 0, u2 = amplitude*cos(n_mode kappa0 x1), theta chosen so that
/// nu u2'' = -g theta.
struct EigenSteadyState {
    SpectralVector u;
    SpectralScalar theta;
};
EigenSteadyState eigen_steady_state(int n_mode, double amplitude, GridPtr grid,
                                    const PhysParams& params);

}  // namespace sdb::exact
