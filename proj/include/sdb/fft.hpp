#pragma once

#include <complex>
#include <vector>

namespace sdb::fft {

/// In-place 2D complex DFTs on row-major n x n data.  Plans are created once
/// per size with FFTW_ESTIMATE (deterministic planning) and cached; execution
/// uses the new-array interface and is safe from concurrent threads.
/// forward() applies the 1/n^2 normalization so that coefficients are Fourier
/// series coefficients; backward() is the plain synthesis sum.
void forward(int n, std::complex<double>* data);
void backward(int n, std::complex<double>* data);

}  // namespace sdb::fft
