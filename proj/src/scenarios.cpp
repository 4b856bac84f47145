#include "mhdstab/scenarios.hpp"

#include <cmath>

#include "mhdstab/rng.hpp"

namespace mhdstab {

namespace {

State random_band(const GridPtr& grid, double amplitude, std::uint64_t seed,
                  double rp4, bool include_solenoidal_u) {
    State s(grid);
    Rng rng(seed);
    const int band = 4;
    if (grid->dealias_cutoff() < band)
        throw ConfigError("grid.m too small for the random_band generator");

    for (int i = -band; i <= band; ++i)
        for (int j = -band; j <= band; ++j)
            for (int l = -band; l <= band; ++l) {
                if (i == 0 && j == 0 && l == 0) continue;
                const long idx = grid->index(grid->index_of_freq(i),
                                             grid->index_of_freq(j),
                                             grid->index_of_freq(l));
                const Vec3 kv{double(i), double(j), double(l)};
                const double kn = norm(kv);
                const Vec3 khat{kv[0] / kn, kv[1] / kn, kv[2] / kn};

                s.a[idx] = rng.unit_phase();
                s.theta[idx] = rng.unit_phase();

                // dilatational velocity: amplitude along khat
                const cplx uz = rng.unit_phase();
                cplx usol[3] = {0, 0, 0};
                if (include_solenoidal_u)
                    for (int c = 0; c < 3; ++c) usol[c] = rng.unit_phase();
                for (int c = 0; c < 3; ++c) {
                    cplx val = uz * khat[c];
                    if (include_solenoidal_u) {
                        // remove the parallel part of the extra draw
                        cplx kdot = 0.0;
                        for (int m = 0; m < 3; ++m) kdot += usol[m] * khat[m];
                        val += usol[c] - kdot * khat[c];
                    }
                    s.u[c][idx] = val;
                }

                // solenoidal magnetic perturbation
                cplx bz[3];
                for (int c = 0; c < 3; ++c) bz[c] = rng.unit_phase();
                cplx kdotb = 0.0;
                for (int c = 0; c < 3; ++c) kdotb += bz[c] * khat[c];
                for (int c = 0; c < 3; ++c) s.b[c][idx] = bz[c] - kdotb * khat[c];
            }

    symmetrize(s.a);
    symmetrize(s.theta);
    symmetrize(s.u);
    symmetrize(s.b);
    s.b = leray_project(s.b);

    const double nn = s.sobolev_norm(rp4);
    if (nn > 0.0) s *= amplitude / nn;
    return s;
}

State steepening(const GridPtr& grid, double amplitude) {
    State s(grid);
    const long ip = grid->index(grid->index_of_freq(1), 0, 0);
    const long im = grid->index(grid->index_of_freq(-1), 0, 0);
    // u1 = A sin(x1) = A (e^{ix} - e^{-ix}) / (2i)
    s.u[0][ip] = cplx(0.0, -0.5 * amplitude);
    s.u[0][im] = cplx(0.0, 0.5 * amplitude);
    // small density ripple a = 0.1 A cos(x1)
    s.a[ip] = cplx(0.05 * amplitude, 0.0);
    s.a[im] = cplx(0.05 * amplitude, 0.0);
    return s;
}

State shear_b(const GridPtr& grid, double amplitude) {
    State s(grid);
    const long ip = grid->index(grid->index_of_freq(1), 0, 0);
    const long im = grid->index(grid->index_of_freq(-1), 0, 0);
    // b2 = A cos(x1), divergence free
    s.b[1][ip] = cplx(0.5 * amplitude, 0.0);
    s.b[1][im] = cplx(0.5 * amplitude, 0.0);
    return s;
}

} // namespace

State make_initial_condition(const std::string& kind, const GridPtr& grid,
                             double amplitude, std::uint64_t seed, double r_plus_4) {
    if (kind == "random_band") return random_band(grid, amplitude, seed, r_plus_4, false);
    if (kind == "random_band_full")
        return random_band(grid, amplitude, seed, r_plus_4, true);
    if (kind == "steepening") return steepening(grid, amplitude);
    if (kind == "shear_b") return shear_b(grid, amplitude);
    throw ConfigError("ic.kind: unknown generator '" + kind + "'");
}

} // namespace mhdstab
