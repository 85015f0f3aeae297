#include "sdb/dynamics.hpp"

#include <cmath>

#include "sdb/fft.hpp"

namespace sdb {

namespace {

struct Tendency {
    SpectralVector du;   // -B(u,u) + P(theta g)
    SpectralScalar dth;  // -u . grad theta
    double max_vel = 0.0;
};

// One evaluation of the nonlinear tendencies; velocity transforms are shared
// between the momentum and scalar advection terms.
Tendency eval_rhs(const SpectralVector& u, const SpectralScalar& theta, const PhysParams& params) {
    const GridPtr grid = u.grid_ptr();
    const int n = grid->n();

    std::vector<Complex> ux(u.x().raw());
    std::vector<Complex> uy(u.y().raw());
    fft::backward(n, ux.data());
    fft::backward(n, uy.data());

    double vmax = 0.0;
    for (std::size_t i = 0; i < ux.size(); ++i) {
        vmax = std::max(vmax, std::hypot(ux[i].real(), uy[i].real()));
    }

    auto advect = [&](const SpectralScalar& f) {
        std::vector<Complex> dfx(derivative(f, 1).raw());
        std::vector<Complex> dfy(derivative(f, 2).raw());
        fft::backward(n, dfx.data());
        fft::backward(n, dfy.data());
        for (std::size_t i = 0; i < dfx.size(); ++i) {
            dfx[i] = Complex(ux[i].real() * dfx[i].real() + uy[i].real() * dfy[i].real(), 0.0);
        }
        fft::forward(n, dfx.data());
        SpectralScalar out(grid);
        out.raw() = std::move(dfx);
        out.enforce();
        return out;
    };

    SpectralVector conv(advect(u.x()), advect(u.y()));
    SpectralVector du = buoyancy_projection(theta, params);
    du -= leray_project(conv);

    SpectralScalar dth = advect(theta);
    dth *= -1.0;

    return Tendency{std::move(du), std::move(dth), vmax};
}

// per-mode exp(-nu kappa0^2 |k|^2 tau) applied in place
void apply_heat_factor(SpectralVector& u, double nu, double tau) {
    const Grid& g = u.grid();
    const int n = g.n();
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            const double f = std::exp(-nu * g.ksq(k1, k2) * tau);
            const std::size_t idx = g.flat(i, j);
            u.x().raw()[idx] *= f;
            u.y().raw()[idx] *= f;
        }
    }
}

double velocity_scale(double vmax, const SimState& state, const PhysParams& params) {
    const double k0 = state.u.grid().kappa0();
    const double theta_scale = params.g * norm_l2(state.theta) / (params.nu * k0 * k0) * k0;
    return std::max({vmax, params.nu * k0, theta_scale});
}

SimState step_with(const SimState& state, const PhysParams& params, double dt) {
    const GridPtr grid = state.u.grid_ptr();
    const double nu = params.nu;

    // Shu-Osher SSP-RK3 with the viscous factor applied exactly
    Tendency t0 = eval_rhs(state.u, state.theta, params);

    SpectralVector ua = state.u;
    ua.add_scaled(t0.du, dt);
    apply_heat_factor(ua, nu, dt);
    SpectralScalar tha = state.theta;
    tha.add_scaled(t0.dth, dt);

    Tendency ta = eval_rhs(ua, tha, params);

    SpectralVector ub = ua;
    ub.add_scaled(ta.du, dt);
    apply_heat_factor(ub, nu, -0.5 * dt);  // back half a step from t+dt
    SpectralVector u0h = state.u;
    apply_heat_factor(u0h, nu, 0.5 * dt);
    ub *= 0.25;
    ub.add_scaled(u0h, 0.75);
    SpectralScalar thb = tha;
    thb.add_scaled(ta.dth, dt);
    thb *= 0.25;
    thb.add_scaled(state.theta, 0.75);

    Tendency tb = eval_rhs(ub, thb, params);

    SpectralVector u1 = ub;
    u1.add_scaled(tb.du, dt);
    apply_heat_factor(u1, nu, 0.5 * dt);
    apply_heat_factor(u0h, nu, 0.5 * dt);  // now the full-step factor on u0
    u1 *= 2.0 / 3.0;
    u1.add_scaled(u0h, 1.0 / 3.0);
    SpectralScalar th1 = thb;
    th1.add_scaled(tb.dth, dt);
    th1 *= 2.0 / 3.0;
    th1.add_scaled(state.theta, 1.0 / 3.0);

    u1.enforce();
    th1.enforce();

    if (!u1.finite() || !th1.finite()) {
        throw NonFiniteError("non-finite coefficient after step at t = " + std::to_string(state.t));
    }
    return SimState(std::move(u1), std::move(th1), state.t + dt);
}

}  // namespace

SpectralVector rhs_velocity(const SimState& state, const PhysParams& params) {
    SpectralVector du = buoyancy_projection(state.theta, params);
    du -= momentum_advection(state.u);
    return du;
}

SpectralScalar rhs_theta(const SimState& state) {
    SpectralScalar dth = advection(state.u, state.theta);
    dth *= -1.0;
    return dth;
}

SpectralVector rhs_velocity_full(const SimState& state, const PhysParams& params) {
    SpectralVector du = rhs_velocity(state, params);
    SpectralVector visc = neg_laplacian(state.u);
    du.add_scaled(visc, -params.nu);
    return du;
}

double cfl_number(const SimState& state, const PhysParams& params, double dt) {
    const double scale = velocity_scale(max_velocity(state.u), state, params);
    return dt * scale / state.u.grid().dx();
}

SimState step(const SimState& state, const PhysParams& params, const StepperConfig& cfg) {
    cfg.validate();
    params.validate();
    double dt = cfg.dt;
    const double cfl = cfl_number(state, params, dt);
    if (cfg.adaptive) {
        while (cfl_number(state, params, dt) > cfg.cfl_safety) dt *= 0.5;
    } else if (cfl > 1.0) {
        throw CflViolationError("advective CFL number " + std::to_string(cfl) + " exceeds 1");
    }
    return step_with(state, params, dt);
}

SpectralScalar recover_pressure(const SimState& state, const PhysParams& params) {
    const GridPtr grid = state.u.grid_ptr();
    SpectralScalar p(grid);

    const SpectralScalar uxux = dealiased_product(state.u.x(), state.u.x());
    const SpectralScalar uxuy = dealiased_product(state.u.x(), state.u.y());
    const SpectralScalar uyuy = dealiased_product(state.u.y(), state.u.y());

    SpectralScalar sum = derivative(derivative(uxux, 1), 1);
    sum += derivative(derivative(uxuy, 1), 2) * 2.0;
    sum += derivative(derivative(uyuy, 2), 2);
    p = inverse_laplacian(sum) * -1.0;

    SpectralScalar buoy = inverse_laplacian(derivative(state.theta, 2));
    p.add_scaled(buoy, params.g);
    p.enforce();
    return p;
}

double resolution_tail_fraction(const SpectralScalar& theta) {
    const Grid& g = theta.grid();
    const int n = g.n();
    const int cut = g.dealias_cut();
    double total = 0.0;
    double tail = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            const double e = std::norm(theta.raw()[g.flat(i, j)]);
            total += e;
            if (std::max(std::abs(k1), std::abs(k2)) == cut) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

SimState run(SimState state, const PhysParams& params, const StepperConfig& cfg,
             const std::vector<Sink>& sinks) {
    return run_until(std::move(state), params, cfg, sinks, nullptr);
}

SimState run_until(SimState state, const PhysParams& params, const StepperConfig& cfg,
                   const std::vector<Sink>& sinks,
                   const std::function<bool(const SimState&)>& stop) {
    cfg.validate();
    params.validate();
    if (cfg.t_end < state.t) throw ValidationError("t_end precedes the initial time");

    auto emit = [&](const RunSample& s) {
        for (const auto& sink : sinks) sink(state, s);
    };
    auto check_resolution = [&]() {
        const double tail = resolution_tail_fraction(state.theta);
        if (tail > 0.01) {
            throw ResolutionError("theta under-resolved: outer shell carries " +
                                  std::to_string(tail * 100.0) + "% of the scalar energy at t = " +
                                  std::to_string(state.t));
        }
    };

    double dt = cfg.dt;
    long step_count = 0;

    while (state.t < cfg.t_end) {
        const double scale = velocity_scale(max_velocity(state.u), state, params);
        const double dx = state.u.grid().dx();
        if (cfg.adaptive) {
            while (dt * scale / dx > cfg.cfl_safety) dt *= 0.5;
            while (dt * 2.0 <= cfg.dt && dt * 2.0 * scale / dx <= cfg.cfl_safety) dt *= 2.0;
        } else if (dt * scale / dx > 1.0) {
            throw CflViolationError("advective CFL number " + std::to_string(dt * scale / dx) +
                                    " exceeds 1 at t = " + std::to_string(state.t));
        }
        if (step_count % cfg.sample_every == 0) {
            emit(RunSample{step_count, dt, dt * scale / dx});
            check_resolution();
            if (stop && stop(state)) return state;
        }
        const double dt_step = std::min(dt, cfg.t_end - state.t);
        state = step_with(state, params, dt_step);
        ++step_count;
    }
    emit(RunSample{step_count, dt, cfl_number(state, params, dt)});
    check_resolution();
    return state;
}

}  // namespace sdb
