#pragma once

#include <functional>
#include <vector>

#include "sdb/field.hpp"
#include "sdb/operators.hpp"
#include "sdb/params.hpp"

namespace sdb {

/// Solver state: solenoidal velocity, transported scalar, current time.
struct SimState {
    SpectralVector u;
    SpectralScalar theta;
    double t = 0.0;

    SimState(SpectralVector u_, SpectralScalar theta_, double t_ = 0.0)
        : u(std::move(u_)), theta(std::move(theta_)), t(t_) {}
    static SimState rest(GridPtr grid) { return SimState(SpectralVector(grid), SpectralScalar(grid)); }
};

struct StepperConfig {
    double dt = 1e-3;
    double cfl_safety = 0.9;   // in (0,1]
    bool adaptive = false;
    double t_end = 1.0;
    int sample_every = 10;

    void validate() const {
        if (!(dt > 0.0)) throw ValidationError("dt must be positive");
        if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
            throw ValidationError("cfl_safety must lie in (0, 1]");
        }
        if (sample_every < 1) throw ValidationError("sample_every must be >= 1");
    }
};

/// -B(u,u) + P_sigma(theta g).  The stiff viscous term is handled by the
/// integrating factor inside step(), not returned here.
SpectralVector rhs_velocity(const SimState& state, const PhysParams& params);

/// -u . grad theta.
SpectralScalar rhs_theta(const SimState& state);

/// Full momentum tendency -nu A u - B(u,u) + P_sigma(theta g); used for
/// steady-state residuals.
SpectralVector rhs_velocity_full(const SimState& state, const PhysParams& params);

/// Advective CFL number dt * vmax / dx with the velocity scale
/// max(||u||_Linf, nu kappa0, g ||theta||_L2 / (nu kappa0^2) * kappa0).
double cfl_number(const SimState& state, const PhysParams& params, double dt);

/// One step of the integrating-factor SSP-RK3 scheme: the viscous term is
/// integrated exactly per mode, advection and buoyancy by three Shu-Osher
/// stages; theta is advanced by the same stages without a linear factor.
/// Mean zeroing, Hermitian symmetrization and dealiasing are re-applied to
/// the result.
SimState step(const SimState& state, const PhysParams& params, const StepperConfig& cfg);

/// p = -sum_ij invLap d_i d_j (u_i u_j) + g invLap d/dx2 theta,
/// with dealiased products.
SpectralScalar recover_pressure(const SimState& state, const PhysParams& params);

struct RunSample {
    long step = 0;
    double dt = 0.0;
    double cfl = 0.0;
};

using Sink = std::function<void(const SimState&, const RunSample&)>;

/// Advances the state to cfg.t_end, invoking every sink each
/// cfg.sample_every steps and at the final time.  With cfg.adaptive the step
/// is halved on CFL violations and doubled back toward cfg.dt when safe; the
/// last step is clipped to land on t_end exactly.  A resolution monitor
/// aborts when the outermost retained shell of theta carries more than 1% of
/// ||theta||^2 (transport steepens gradients; an under-resolved theta would
/// silently corrupt the distribution-function diagnostics).
SimState run(SimState state, const PhysParams& params, const StepperConfig& cfg,
             const std::vector<Sink>& sinks);

/// run() with an early-exit predicate, evaluated at each sample point after
/// the sinks fire.
SimState run_until(SimState state, const PhysParams& params, const StepperConfig& cfg,
                   const std::vector<Sink>& sinks, const std::function<bool(const SimState&)>& stop);

/// Fraction of ||theta||^2 carried by the outermost retained shell
/// (max(|k1|,|k2|) == dealias_cut).
double resolution_tail_fraction(const SpectralScalar& theta);

}  // namespace sdb
