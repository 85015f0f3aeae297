#pragma once

#include <cstdint>

#include "sdb/field.hpp"

namespace sdb {

/// Random mean-free scalar with isotropic spectrum |f_hat(k)| ~ |k| exp(-|k|^2/k_peak^2)
/// and seeded phases, normalized to ||f||_L2 = norm.
SpectralScalar random_scalar(GridPtr grid, std::uint64_t seed, double norm, double k_peak = 3.0);

/// Random solenoidal velocity built from a random streamfunction
/// (u = perp-grad psi), normalized to ||u||_L2 = norm.
SpectralVector random_velocity(GridPtr grid, std::uint64_t seed, double norm, double k_peak = 3.0);

}  // namespace sdb
