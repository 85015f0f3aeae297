#pragma once

#include <complex>
#include <vector>

#include "sdb/grid.hpp"

namespace sdb {

using Complex = std::complex<double>;

/// Mean-free real periodic scalar stored as complex Fourier coefficients on
/// the full n x n lattice (FFT ordering).  Invariants: zero mode is exactly 0,
/// coeff(-k) == conj(coeff(k)), and every mode beyond the dealias cut is 0.
class SpectralScalar {
  public:
    explicit SpectralScalar(GridPtr grid);

    /// DFT of an n x n physical sample array (row-major, index i*n+j for the
    /// point (i*dx, j*dx)).  Throws NonZeroMeanError if |spatial mean| >= 1e-12.
    static SpectralScalar from_physical(GridPtr grid, const std::vector<double>& values);

    std::vector<double> to_physical() const;

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }

    Complex coeff(int k1, int k2) const {
        return data_[grid_->flat(grid_->index_of(k1), grid_->index_of(k2))];
    }
    /// Sets coeff(k) = c and coeff(-k) = conj(c).
    void set_mode(int k1, int k2, Complex c);

    std::vector<Complex>& raw() { return data_; }
    const std::vector<Complex>& raw() const { return data_; }

    /// Re-applies the invariants: dealias mask, Hermitian symmetrization,
    /// zero mean.
    void enforce();

    void clear();
    bool is_zero() const;
    double max_abs_coeff() const;
    bool finite() const;

    // linear algebra on coefficients
    SpectralScalar& operator+=(const SpectralScalar& other);
    SpectralScalar& operator-=(const SpectralScalar& other);
    SpectralScalar& operator*=(double s);
    void add_scaled(const SpectralScalar& other, double s);  // this += s*other
    void add_scaled(const SpectralScalar& other, Complex s);

    friend SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { return a += b; }
    friend SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { return a -= b; }
    friend SpectralScalar operator*(SpectralScalar a, double s) { return a *= s; }
    friend SpectralScalar operator*(double s, SpectralScalar a) { return a *= s; }

  private:
    GridPtr grid_;
    std::vector<Complex> data_;
};

/// Two-component vector field; solenoidal when k . u_hat(k) == 0 per mode.
class SpectralVector {
  public:
    explicit SpectralVector(GridPtr grid) : x_(grid), y_(grid) {}
    SpectralVector(SpectralScalar x, SpectralScalar y);

    const SpectralScalar& x() const { return x_; }
    const SpectralScalar& y() const { return y_; }
    SpectralScalar& x() { return x_; }
    SpectralScalar& y() { return y_; }

    const Grid& grid() const { return x_.grid(); }
    GridPtr grid_ptr() const { return x_.grid_ptr(); }

    void enforce() {
        x_.enforce();
        y_.enforce();
    }
    void clear() {
        x_.clear();
        y_.clear();
    }
    bool finite() const { return x_.finite() && y_.finite(); }

    /// max over modes of |k . u_hat(k)| / (|k| max|u_hat|); 0 for the zero field.
    double solenoidal_residual() const;
    bool is_solenoidal(double tol = 1e-13) const { return solenoidal_residual() <= tol; }

    SpectralVector& operator+=(const SpectralVector& o) {
        x_ += o.x_;
        y_ += o.y_;
        return *this;
    }
    SpectralVector& operator-=(const SpectralVector& o) {
        x_ -= o.x_;
        y_ -= o.y_;
        return *this;
    }
    SpectralVector& operator*=(double s) {
        x_ *= s;
        y_ *= s;
        return *this;
    }
    void add_scaled(const SpectralVector& o, double s) {
        x_.add_scaled(o.x_, s);
        y_.add_scaled(o.y_, s);
    }

    friend SpectralVector operator+(SpectralVector a, const SpectralVector& b) { return a += b; }
    friend SpectralVector operator-(SpectralVector a, const SpectralVector& b) { return a -= b; }
    friend SpectralVector operator*(SpectralVector a, double s) { return a *= s; }
    friend SpectralVector operator*(double s, SpectralVector a) { return a *= s; }

  private:
    SpectralScalar x_;
    SpectralScalar y_;
};

}  // namespace sdb
