#include "sdb/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sdb/operators.hpp"

namespace sdb {

namespace {

SpectralScalar random_spectrum(GridPtr grid, std::uint64_t seed, double k_peak) {
    SpectralScalar f(grid);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    const int cut = grid->dealias_cut();
    // deterministic mode order: canonical half-lattice
    for (int k1 = 0; k1 <= cut; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -cut); k2 <= cut; ++k2) {
            const double kmag =
                std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            const double amp = kmag * std::exp(-kmag * kmag / (k_peak * k_peak));
            const double ph = phase(rng);
            f.set_mode(k1, k2, 0.5 * amp * Complex(std::cos(ph), std::sin(ph)));
        }
    }
    return f;
}

}  // namespace

SpectralScalar random_scalar(GridPtr grid, std::uint64_t seed, double norm, double k_peak) {
    SpectralScalar f = random_spectrum(grid, seed, k_peak);
    const double current = norm_l2(f);
    if (current > 0.0) f *= norm / current;
    return f;
}

SpectralVector random_velocity(GridPtr grid, std::uint64_t seed, double norm, double k_peak) {
    SpectralScalar psi = random_spectrum(grid, seed, k_peak);
    SpectralVector u(derivative(psi, 2) * -1.0, derivative(psi, 1));
    const double current = norm_l2(u);
    if (current > 0.0) u *= norm / current;
    return u;
}

}  // namespace sdb
