#pragma once

#include "sdb/errors.hpp"

namespace sdb {

/// Physical parameters: viscosity nu > 0, gravity magnitude g >= 0 (force is
/// (0, g*theta)), box side L.
struct PhysParams {
    double nu = 1.0;
    double g = 1.0;
    double box_len = 1.0;

    void validate() const {
        if (!(nu > 0.0)) throw ValidationError("nu must be positive");
        if (!(g >= 0.0)) throw ValidationError("g must be non-negative");
        if (!(box_len > 0.0)) throw ValidationError("box_len must be positive");
    }
};

}  // namespace sdb
