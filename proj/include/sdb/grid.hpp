#pragma once

#include <cmath>
#include <cstddef>
#include <memory>

#include "sdb/errors.hpp"

namespace sdb {

/// Periodic box discretization: n x n physical grid on [0,L)^2, integer
/// wavenumber lattice k in [-n/2, n/2-1]^2, fundamental wavenumber
/// kappa0 = 2*pi/L.  Modes with max(|k1|,|k2|) > dealias_cut (the 2/3 rule)
/// are never carried, which also removes the ambiguous Nyquist row/column.
class Grid {
  public:
    Grid(int n, double box_len);

    int n() const { return n_; }
    double box_len() const { return box_len_; }
    double kappa0() const { return kappa0_; }
    int dealias_cut() const { return dealias_cut_; }
    double dx() const { return box_len_ / n_; }
    double area() const { return box_len_ * box_len_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    // storage index <-> integer wavenumber (FFT ordering)
    int wavenumber(int idx) const { return idx < n_ / 2 ? idx : idx - n_; }
    int index_of(int k) const { return k >= 0 ? k : k + n_; }
    std::size_t flat(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    bool retained(int k1, int k2) const {
        return std::abs(k1) <= dealias_cut_ && std::abs(k2) <= dealias_cut_;
    }
    // kappa0^2 * |k|^2
    double ksq(int k1, int k2) const {
        return kappa0_ * kappa0_ * (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
    }

    bool compatible(const Grid& other) const {
        return n_ == other.n_ && box_len_ == other.box_len_;
    }

  private:
    int n_;
    double box_len_;
    double kappa0_;
    int dealias_cut_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int n, double box_len) {
    return std::make_shared<const Grid>(n, box_len);
}

}  // namespace sdb
