#include "sdb/field.hpp"

#include <algorithm>
#include <cmath>

#include "sdb/fft.hpp"

namespace sdb {

SpectralScalar::SpectralScalar(GridPtr grid) : grid_(std::move(grid)), data_(grid_->size()) {}

SpectralScalar SpectralScalar::from_physical(GridPtr grid, const std::vector<double>& values) {
    if (values.size() != grid->size()) {
        throw ValidationError("physical array size does not match grid");
    }
    SpectralScalar f(grid);
    for (std::size_t i = 0; i < values.size(); ++i) f.data_[i] = values[i];
    fft::forward(grid->n(), f.data_.data());
    const double mean = std::abs(f.data_[0]);
    if (mean >= 1e-12) {
        throw NonZeroMeanError("field has non-zero spatial mean " + std::to_string(mean));
    }
    f.enforce();
    return f;
}

std::vector<double> SpectralScalar::to_physical() const {
    std::vector<Complex> work(data_);
    fft::backward(grid_->n(), work.data());
    std::vector<double> out(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
    return out;
}

void SpectralScalar::set_mode(int k1, int k2, Complex c) {
    if (!grid_->retained(k1, k2)) {
        throw UnresolvableError("mode (" + std::to_string(k1) + "," + std::to_string(k2) +
                                ") is beyond the dealias cut");
    }
    if (k1 == 0 && k2 == 0) {
        throw NonZeroMeanError("cannot set the zero mode of a mean-free field");
    }
    data_[grid_->flat(grid_->index_of(k1), grid_->index_of(k2))] = c;
    data_[grid_->flat(grid_->index_of(-k1), grid_->index_of(-k2))] = std::conj(c);
}

void SpectralScalar::enforce() {
    const int n = grid_->n();
    // dealias mask (also kills the Nyquist row/column)
    for (int i = 0; i < n; ++i) {
        const int k1 = grid_->wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = grid_->wavenumber(j);
            if (!grid_->retained(k1, k2)) data_[grid_->flat(i, j)] = Complex(0.0, 0.0);
        }
    }
    // Hermitian symmetrization, each retained conjugate pair visited once
    const int cut = grid_->dealias_cut();
    for (int k1 = 0; k1 <= cut; ++k1) {
        for (int k2 = (k1 == 0 ? 1 : -cut); k2 <= cut; ++k2) {
            const std::size_t a = grid_->flat(grid_->index_of(k1), grid_->index_of(k2));
            const std::size_t b = grid_->flat(grid_->index_of(-k1), grid_->index_of(-k2));
            const Complex avg = 0.5 * (data_[a] + std::conj(data_[b]));
            data_[a] = avg;
            data_[b] = std::conj(avg);
        }
    }
    data_[0] = Complex(0.0, 0.0);
}

void SpectralScalar::clear() {
    std::fill(data_.begin(), data_.end(), Complex(0.0, 0.0));
}

bool SpectralScalar::is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](Complex c) { return c == Complex(0.0, 0.0); });
}

double SpectralScalar::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : data_) m = std::max(m, std::abs(c));
    return m;
}

bool SpectralScalar::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](Complex c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

SpectralScalar& SpectralScalar::operator+=(const SpectralScalar& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

SpectralScalar& SpectralScalar::operator-=(const SpectralScalar& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

SpectralScalar& SpectralScalar::operator*=(double s) {
    for (Complex& c : data_) c *= s;
    return *this;
}

void SpectralScalar::add_scaled(const SpectralScalar& other, double s) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
}

void SpectralScalar::add_scaled(const SpectralScalar& other, Complex s) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
}

SpectralVector::SpectralVector(SpectralScalar x, SpectralScalar y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (!x_.grid().compatible(y_.grid())) {
        throw ValidationError("vector components live on different grids");
    }
}

double SpectralVector::solenoidal_residual() const {
    const Grid& g = grid();
    const int n = g.n();
    // |k . u_hat| is judged against the field's coefficient scale: modes that
    // hold only round-off residue from projected products must not dominate
    const double scale = std::max(x_.max_abs_coeff(), y_.max_abs_coeff());
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k1 = g.wavenumber(i);
        for (int j = 0; j < n; ++j) {
            const int k2 = g.wavenumber(j);
            if (k1 == 0 && k2 == 0) continue;
            const std::size_t idx = g.flat(i, j);
            const Complex ux = x_.raw()[idx];
            const Complex uy = y_.raw()[idx];
            if (ux == Complex(0.0, 0.0) && uy == Complex(0.0, 0.0)) continue;
            const double div = std::abs(static_cast<double>(k1) * ux + static_cast<double>(k2) * uy);
            const double kmag = std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2);
            worst = std::max(worst, div / (kmag * scale));
        }
    }
    return worst;
}

}  // namespace sdb
