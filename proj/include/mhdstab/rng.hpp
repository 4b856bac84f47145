#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mhdstab {

/// Deterministic random source.  Distributions are built from the raw
/// mt19937_64 stream (std:: distributions are implementation-defined and
/// would break cross-toolchain reproducibility of generated scenarios).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0,1) with 53 random bits.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::complex<double> complex_gaussian() {
        return {gaussian(), gaussian()};
    }

    /// e^{i phi} with phi uniform in [0,2pi).
    std::complex<double> unit_phase() {
        const double t = 2.0 * M_PI * uniform();
        return {std::cos(t), std::sin(t)};
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace mhdstab
