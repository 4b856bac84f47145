#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "mhdstab/errors.hpp"

namespace mhdstab {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Uniform periodic grid on [0,2pi)^3 with M points per axis and the
/// integer wavevector lattice {-M/2+1,...,M/2}^3.  All integrals are
/// normalized so that |T^3| = 1: the k=0 coefficient of a field is its mean.
///
/// The grid owns the FFTW plans; fields share the grid by pointer.
class Grid : public std::enable_shared_from_this<Grid> {
  public:
    /// m must be even and >= 8.
    static std::shared_ptr<const Grid> create(int m);
    ~Grid();

    Grid(const Grid&) = delete;
    Grid& operator=(const Grid&) = delete;

    int m() const { return m_; }
    long size() const { return static_cast<long>(m_) * m_ * m_; }
    int dealias_cutoff() const { return m_ / 3; }

    /// Signed frequency of storage index i along one axis: 0..M/2, -M/2+1..-1.
    int freq(int i) const { return freq_[i]; }
    /// Storage index of frequency f (f in -M/2+1..M/2).
    int index_of_freq(int f) const { return f >= 0 ? f : f + m_; }

    long index(int i, int j, int l) const {
        return (static_cast<long>(i) * m_ + j) * m_ + l;
    }
    /// Index of the reflected mode -k given the index of k (per-axis M-i mod M).
    long conj_index(int i, int j, int l) const {
        return index(i == 0 ? 0 : m_ - i, j == 0 ? 0 : m_ - j, l == 0 ? 0 : m_ - l);
    }

    /// In-place 3D transforms on a full complex cube of size M^3.
    /// forward includes the 1/M^3 factor so that coefficients are the
    /// amplitudes in f(x) = sum_k c_k exp(i k.x).
    void fft_forward(std::complex<double>* data) const;
    void fft_backward(std::complex<double>* data) const;

  private:
    explicit Grid(int m);

    int m_;
    std::vector<int> freq_;
    void* plan_fwd_ = nullptr; // fftw_plan
    void* plan_bwd_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

} // namespace mhdstab
