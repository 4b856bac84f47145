#include "mhdstab/diophantine.hpp"

#include <cmath>
#include <mutex>

#include "mhdstab/rng.hpp"
#include "mhdstab/spectral.hpp"
#include "mhdstab/threads.hpp"

namespace mhdstab {

namespace {

struct ScanBest {
    double value = std::numeric_limits<double>::infinity();
    long k2 = 0; // |k|^2, tie-break
    std::array<int, 3> k{0, 0, 0};

    bool better_than(const ScanBest& o) const {
        if (value != o.value) return value < o.value;
        if (k2 != o.k2) return k2 < o.k2;
        return k < o.k;
    }
};

} // namespace

BackgroundField scan_constant(const Vec3& n, double r, int K) {
    if (n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0)
        throw InvalidBackgroundError("background field n must be nonzero");
    if (r <= 2.0) throw ConfigError("dio.r must satisfy r > 2");
    if (K < 1) throw ConfigError("dio.K must be >= 1");

    const long span = 2L * K + 1;
    ScanBest best;
    std::mutex merge;
    parallel_chunks(span, [&](long b, long e) {
        ScanBest local;
        for (long ii = b; ii < e; ++ii) {
            const int k1 = static_cast<int>(ii) - K;
            for (int k2c = -K; k2c <= K; ++k2c) {
                for (int k3 = -K; k3 <= K; ++k3) {
                    if (k1 == 0 && k2c == 0 && k3 == 0) continue;
                    const long kk = long(k1) * k1 + long(k2c) * k2c + long(k3) * k3;
                    const double nk = std::abs(n[0] * k1 + n[1] * k2c + n[2] * k3);
                    ScanBest cand{nk * std::pow(double(kk), 0.5 * r), kk, {k1, k2c, k3}};
                    if (cand.better_than(local)) local = cand;
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge);
        if (local.better_than(best)) best = local;
    });

    BackgroundField bg;
    bg.n = n;
    bg.r = r;
    bg.K = K;
    bg.c_est = best.value;
    bg.k_min = best.k;
    return bg;
}

namespace {

bool band_limited(const ScalarField& f, int K) {
    const Grid& g = *f.grid();
    bool ok = true;
    const int m = g.m();
    for (int i = 0; i < m && ok; ++i)
        for (int j = 0; j < m && ok; ++j)
            for (int l = 0; l < m && ok; ++l) {
                const int k1 = g.freq(i), k2 = g.freq(j), k3 = g.freq(l);
                if (std::abs(k1) <= K && std::abs(k2) <= K && std::abs(k3) <= K) continue;
                if (std::abs(f[g.index(i, j, l)]) != 0.0) ok = false;
            }
    return ok;
}

} // namespace

MarginReport verify_directional_inequality(const ScalarField& f,
                                           const BackgroundField& bg, double s) {
    const double l2 = sobolev_norm(f, 0.0);
    if (std::abs(f.mean_mode()) > 1e-13 * std::max(1e-300, l2))
        throw PreconditionError("verify_directional_inequality requires a mean-zero field");

    MarginReport rep;
    rep.band_ok = band_limited(f, bg.K);
    const double num = sobolev_norm(f, s);
    const double den = sobolev_norm(directional_derivative(f, bg.n), s + bg.r);
    rep.ratio = (num == 0.0) ? 0.0 : num / den;
    rep.bound = 1.0 / bg.c_est;
    rep.holds = rep.ratio <= rep.bound;
    return rep;
}

MarginReport verify_velocity_variant(const VectorField& u, const ScalarField& rho,
                                     const BackgroundField& bg, double s) {
    MarginReport rep;
    // ||rho - 1||_{L2}
    ScalarField dev = rho;
    dev[0] -= 1.0;
    rep.rho_ok = sobolev_norm(dev, 0.0) <= 0.5;

    // weighted mean: int rho u dx, each component
    const RealField rp = to_physical(rho);
    double wm = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
        const RealField up = to_physical(u[ax]);
        wm = std::max(wm, std::abs((rp * up).mean()));
    }
    rep.mean_ok = wm <= 1e-10;

    rep.band_ok = band_limited(u[0], bg.K) && band_limited(u[1], bg.K) &&
                  band_limited(u[2], bg.K);

    const double num = sobolev_norm(u, s);
    const double den = sobolev_norm(directional_derivative(u, bg.n), s + bg.r);
    rep.ratio = (num == 0.0) ? 0.0 : num / den;
    rep.bound = 2.0 * (1.0 + 1.0 / bg.c_est);
    rep.holds = rep.ratio <= rep.bound;
    return rep;
}

BackgroundField random_candidate(std::uint64_t seed, double r, int K) {
    Rng rng(seed);
    Vec3 n{rng.uniform(1.0, 2.0), rng.uniform(1.0, 2.0), rng.uniform(1.0, 2.0)};
    return scan_constant(n, r, K);
}

} // namespace mhdstab
