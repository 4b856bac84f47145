#include "mhdstab/spectral.hpp"

#include <cmath>

namespace mhdstab {

namespace {

// Loop over all modes calling fn(index, k1, k2, k3) with signed frequencies.
template <typename F>
void for_each_mode(const Grid& g, F&& fn) {
    const int m = g.m();
    long idx = 0;
    for (int i = 0; i < m; ++i) {
        const int k1 = g.freq(i);
        for (int j = 0; j < m; ++j) {
            const int k2 = g.freq(j);
            for (int l = 0; l < m; ++l, ++idx) {
                fn(idx, k1, k2, g.freq(l));
            }
        }
    }
}

void check_finite(const ScalarField& f) {
    if (!f.finite()) throw InvalidFieldError("field has non-finite coefficients");
}

} // namespace

RealField to_physical(const ScalarField& f) {
    std::vector<cplx> buf = f.coeffs();
    f.grid()->fft_backward(buf.data());
    RealField p(f.grid());
    for (size_t i = 0; i < buf.size(); ++i) p.v[i] = buf[i].real();
    return p;
}

ScalarField from_physical(const RealField& p) {
    ScalarField f(p.grid);
    auto& c = f.coeffs();
    for (size_t i = 0; i < p.v.size(); ++i) c[i] = cplx(p.v[i], 0.0);
    p.grid->fft_forward(c.data());
    return f;
}

std::array<RealField, 3> to_physical(const VectorField& v) {
    return {to_physical(v[0]), to_physical(v[1]), to_physical(v[2])};
}

ScalarField derivative(const ScalarField& f, int axis) {
    ScalarField out(f.grid());
    const auto& in = f.coeffs();
    auto& c = out.coeffs();
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        const int kk[3] = {k1, k2, k3};
        c[idx] = cplx(0.0, static_cast<double>(kk[axis])) * in[idx];
    });
    return out;
}

VectorField gradient(const ScalarField& f) {
    VectorField g(f.grid());
    for (int ax = 0; ax < 3; ++ax) g[ax] = derivative(f, ax);
    return g;
}

ScalarField divergence(const VectorField& v) {
    ScalarField out(v.grid());
    auto& c = out.coeffs();
    for_each_mode(*v.grid(), [&](long idx, int k1, int k2, int k3) {
        c[idx] = cplx(0.0, 1.0) * (double(k1) * v[0][idx] + double(k2) * v[1][idx] +
                                   double(k3) * v[2][idx]);
    });
    return out;
}

VectorField curl(const VectorField& v) {
    VectorField out(v.grid());
    for_each_mode(*v.grid(), [&](long idx, int k1, int k2, int k3) {
        const cplx i(0.0, 1.0);
        out[0][idx] = i * (double(k2) * v[2][idx] - double(k3) * v[1][idx]);
        out[1][idx] = i * (double(k3) * v[0][idx] - double(k1) * v[2][idx]);
        out[2][idx] = i * (double(k1) * v[1][idx] - double(k2) * v[0][idx]);
    });
    return out;
}

ScalarField laplacian(const ScalarField& f) {
    ScalarField out(f.grid());
    const auto& in = f.coeffs();
    auto& c = out.coeffs();
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        const double k2n = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        c[idx] = -k2n * in[idx];
    });
    return out;
}

VectorField laplacian(const VectorField& v) {
    VectorField out(v.grid());
    for (int ax = 0; ax < 3; ++ax) out[ax] = laplacian(v[ax]);
    return out;
}

ScalarField directional_derivative(const ScalarField& f, const Vec3& n) {
    ScalarField out(f.grid());
    const auto& in = f.coeffs();
    auto& c = out.coeffs();
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        const double nk = n[0] * k1 + n[1] * k2 + n[2] * k3;
        c[idx] = cplx(0.0, nk) * in[idx];
    });
    return out;
}

VectorField directional_derivative(const VectorField& v, const Vec3& n) {
    VectorField out(v.grid());
    for (int ax = 0; ax < 3; ++ax) out[ax] = directional_derivative(v[ax], n);
    return out;
}

ScalarField bessel_multiplier(const ScalarField& f, double s, NormKind kind) {
    check_finite(f);
    if (kind == NormKind::Homogeneous && s < 0.0) {
        const double mean = std::abs(f.mean_mode());
        double l2 = 0.0;
        for (const auto& z : f.coeffs()) l2 += std::norm(z);
        if (mean > 1e-13 * std::max(1e-300, std::sqrt(l2)))
            throw DegenerateModeError(
                "Lambda^s with s<0 applied to a field with nonzero mean");
    }
    ScalarField out(f.grid());
    const auto& in = f.coeffs();
    auto& c = out.coeffs();
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        const double k2n = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        double w;
        if (kind == NormKind::Homogeneous)
            w = (k2n == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2n, 0.5 * s);
        else
            w = std::pow(1.0 + k2n, 0.5 * s);
        c[idx] = w * in[idx];
    });
    return out;
}

void dealias_inplace(ScalarField& f) {
    const int cut = f.grid()->dealias_cutoff();
    auto& c = f.coeffs();
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        if (std::abs(k1) > cut || std::abs(k2) > cut || std::abs(k3) > cut)
            c[idx] = cplx(0.0);
    });
}

ScalarField dealias(const ScalarField& f) {
    ScalarField out = f;
    dealias_inplace(out);
    return out;
}

void dealias_inplace(VectorField& v) {
    for (int ax = 0; ax < 3; ++ax) dealias_inplace(v[ax]);
}

double zero_nyquist(ScalarField& f) {
    const int ny = f.grid()->m() / 2;
    auto& c = f.coeffs();
    double removed2 = 0.0;
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        if (k1 == ny || k2 == ny || k3 == ny) {
            removed2 += std::norm(c[idx]);
            c[idx] = cplx(0.0);
        }
    });
    return std::sqrt(removed2);
}

double zero_nyquist(VectorField& v) {
    double r2 = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
        const double r = zero_nyquist(v[ax]);
        r2 += r * r;
    }
    return std::sqrt(r2);
}

void symmetrize(ScalarField& f) {
    const Grid& g = *f.grid();
    const int m = g.m();
    auto& c = f.coeffs();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) {
                const long a = g.index(i, j, l);
                const long b = g.conj_index(i, j, l);
                if (a > b) continue;
                const cplx za = c[a], zb = c[b];
                const cplx half = 0.5 * (za + std::conj(zb));
                c[a] = half;
                c[b] = std::conj(half);
            }
}

void symmetrize(VectorField& v) {
    for (int ax = 0; ax < 3; ++ax) symmetrize(v[ax]);
}

double conjugate_symmetry_error(const ScalarField& f) {
    const Grid& g = *f.grid();
    const int m = g.m();
    const auto& c = f.coeffs();
    double err = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l) {
                const long a = g.index(i, j, l);
                const long b = g.conj_index(i, j, l);
                err = std::max(err, std::abs(c[a] - std::conj(c[b])));
            }
    return err;
}

VectorField leray_project(const VectorField& v) {
    VectorField out = v;
    for_each_mode(*v.grid(), [&](long idx, int k1, int k2, int k3) {
        const double k2n = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        if (k2n == 0.0) return;
        const cplx kv = double(k1) * v[0][idx] + double(k2) * v[1][idx] +
                        double(k3) * v[2][idx];
        const cplx fac = kv / k2n;
        out[0][idx] -= double(k1) * fac;
        out[1][idx] -= double(k2) * fac;
        out[2][idx] -= double(k3) * fac;
    });
    return out;
}

double max_spectral_divergence(const VectorField& v) {
    double mx = 0.0;
    for_each_mode(*v.grid(), [&](long idx, int k1, int k2, int k3) {
        const cplx kv = double(k1) * v[0][idx] + double(k2) * v[1][idx] +
                        double(k3) * v[2][idx];
        mx = std::max(mx, std::abs(kv));
    });
    return mx;
}

double sobolev_norm(const ScalarField& f, double s, NormKind kind) {
    check_finite(f);
    double acc = 0.0;
    const auto& c = f.coeffs();
    for_each_mode(*f.grid(), [&](long idx, int k1, int k2, int k3) {
        const double k2n = double(k1) * k1 + double(k2) * k2 + double(k3) * k3;
        double w;
        if (kind == NormKind::Homogeneous)
            w = (k2n == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(k2n, s);
        else
            w = std::pow(1.0 + k2n, s);
        acc += w * std::norm(c[idx]);
    });
    return std::sqrt(acc);
}

double sobolev_norm(const VectorField& v, double s, NormKind kind) {
    double acc = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
        const double nn = sobolev_norm(v[ax], s, kind);
        acc += nn * nn;
    }
    return std::sqrt(acc);
}

double inner_product(const ScalarField& f, const ScalarField& g) {
    double acc = 0.0;
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    for (size_t i = 0; i < a.size(); ++i)
        acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    return acc;
}

double inner_product(const VectorField& f, const VectorField& g) {
    return inner_product(f[0], g[0]) + inner_product(f[1], g[1]) +
           inner_product(f[2], g[2]);
}

} // namespace mhdstab
