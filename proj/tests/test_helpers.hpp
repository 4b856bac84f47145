#pragma once

#include "mhdstab/rng.hpp"
#include "mhdstab/spectral.hpp"

namespace mhdstab::test {

/// Random real scalar field with unit-phase coefficients on
/// 1 <= |k|_inf <= band, conjugate-symmetrized.
inline ScalarField random_scalar(const GridPtr& g, Rng& rng, int band,
                                 bool zero_mean = true) {
    ScalarField f(g);
    for (int i = -band; i <= band; ++i)
        for (int j = -band; j <= band; ++j)
            for (int l = -band; l <= band; ++l) {
                if (i == 0 && j == 0 && l == 0) continue;
                f[g->index(g->index_of_freq(i), g->index_of_freq(j),
                           g->index_of_freq(l))] = rng.complex_gaussian();
            }
    if (!zero_mean) f[0] = cplx(rng.gaussian(), 0.0);
    symmetrize(f);
    return f;
}

inline VectorField random_vector(const GridPtr& g, Rng& rng, int band) {
    VectorField v(g);
    for (int c = 0; c < 3; ++c) v[c] = random_scalar(g, rng, band);
    return v;
}

/// Set a single real cosine mode: f += amp * cos(k.x + phase-less).
inline void set_cosine(ScalarField& f, int k1, int k2, int k3, double amp) {
    const Grid& g = *f.grid();
    const long ip = g.index(g.index_of_freq(k1), g.index_of_freq(k2), g.index_of_freq(k3));
    const long im =
        g.index(g.index_of_freq(-k1), g.index_of_freq(-k2), g.index_of_freq(-k3));
    f[ip] += cplx(0.5 * amp, 0.0);
    f[im] += cplx(0.5 * amp, 0.0);
}

/// f += amp * sin(k.x).
inline void set_sine(ScalarField& f, int k1, int k2, int k3, double amp) {
    const Grid& g = *f.grid();
    const long ip = g.index(g.index_of_freq(k1), g.index_of_freq(k2), g.index_of_freq(k3));
    const long im =
        g.index(g.index_of_freq(-k1), g.index_of_freq(-k2), g.index_of_freq(-k3));
    f[ip] += cplx(0.0, -0.5 * amp);
    f[im] += cplx(0.0, 0.5 * amp);
}

inline double linf_diff(const ScalarField& a, const ScalarField& b) {
    double mx = 0.0;
    for (long i = 0; i < a.size(); ++i) mx = std::max(mx, std::abs(a[i] - b[i]));
    return mx;
}

inline double l2_diff(const ScalarField& a, const ScalarField& b) {
    double acc = 0.0;
    for (long i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
    return std::sqrt(acc);
}

inline double l2_diff(const VectorField& a, const VectorField& b) {
    double acc = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double d = l2_diff(a[c], b[c]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

/// Mismatch between the reduced-dispersion pair and the two nearest dense
/// eigenvalues, measured on the pair's elementary symmetric functions.
/// Sum and product are first-order stable even when the pair is defective
/// (discriminant 0), where individual eigenvalues of any dense solve split
/// by sqrt(eps).
inline double transverse_pair_mismatch(const std::vector<std::complex<double>>& dense,
                                       const std::array<std::complex<double>, 2>& pair) {
    // nearest dense eigenvalue to each root, second pick excluding the first
    size_t i0 = 0;
    double best = 1e300;
    for (size_t i = 0; i < dense.size(); ++i) {
        const double d = std::abs(dense[i] - pair[0]);
        if (d < best) {
            best = d;
            i0 = i;
        }
    }
    size_t i1 = (i0 + 1) % dense.size();
    best = 1e300;
    for (size_t i = 0; i < dense.size(); ++i) {
        if (i == i0) continue;
        const double d = std::abs(dense[i] - pair[1]);
        if (d < best) {
            best = d;
            i1 = i;
        }
    }
    const std::complex<double> sum_err = (dense[i0] + dense[i1]) - (pair[0] + pair[1]);
    const std::complex<double> prod_err = dense[i0] * dense[i1] - pair[0] * pair[1];
    const double sum_scale = std::max(1.0, std::abs(pair[0] + pair[1]));
    const double prod_scale = std::max(1.0, std::abs(pair[0] * pair[1]));
    return std::max(std::abs(sum_err) / sum_scale, std::abs(prod_err) / prod_scale);
}

} // namespace mhdstab::test
