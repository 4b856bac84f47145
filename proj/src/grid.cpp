#include "mhdstab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace mhdstab {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Grid::Grid(int m) : m_(m) {
    freq_.resize(m_);
    for (int i = 0; i < m_; ++i) freq_[i] = (i <= m_ / 2) ? i : i - m_;

    // FFTW planning is not thread safe; execution via fftw_execute_dft is.
    std::lock_guard<std::mutex> lock(planner_mutex());
    std::vector<std::complex<double>> scratch(size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    plan_fwd_ = fftw_plan_dft_3d(m_, m_, m_, buf, buf, FFTW_FORWARD,
                                 FFTW_MEASURE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_3d(m_, m_, m_, buf, buf, FFTW_BACKWARD,
                                 FFTW_MEASURE | FFTW_UNALIGNED);
}

Grid::~Grid() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

std::shared_ptr<const Grid> Grid::create(int m) {
    if (m < 8 || m % 2 != 0)
        throw ConfigError("grid.m must be even and >= 8, got " + std::to_string(m));
    return std::shared_ptr<const Grid>(new Grid(m));
}

void Grid::fft_forward(std::complex<double>* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), buf, buf);
    const double scale = 1.0 / static_cast<double>(size());
    const long n = size();
    for (long i = 0; i < n; ++i) data[i] *= scale;
}

void Grid::fft_backward(std::complex<double>* data) const {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), buf, buf);
}

} // namespace mhdstab
