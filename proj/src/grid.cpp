#include "sdb/grid.hpp"

#include <numbers>

namespace sdb {

Grid::Grid(int n, double box_len)
    : n_(n), box_len_(box_len), kappa0_(2.0 * std::numbers::pi / box_len), dealias_cut_(n / 3) {
    if (n < 6 || n % 2 != 0) {
        throw ValidationError("n must be even and >= 6");
    }
    if (!(box_len > 0.0)) {
        throw ValidationError("box_len must be positive");
    }
}

}  // namespace sdb
