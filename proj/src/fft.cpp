#include "sdb/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace sdb::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

// FFTW planning is not thread safe; executing distinct transforms via the
// new-array interface is.  FFTW_UNALIGNED keeps the plans valid for any
// std::vector-backed buffer.
PlanPair plans_for(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n) * n);
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_2d(n, n, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[n] = p;
    return p;
}

}  // namespace

void forward(int n, std::complex<double>* data) {
    PlanPair p = plans_for(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.fwd, ptr, ptr);
    const double scale = 1.0 / (static_cast<double>(n) * n);
    const std::size_t total = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

void backward(int n, std::complex<double>* data) {
    PlanPair p = plans_for(n);
    auto* ptr = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.bwd, ptr, ptr);
}

}  // namespace sdb::fft
