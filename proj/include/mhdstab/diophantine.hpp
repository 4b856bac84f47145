#pragma once

#include <array>
#include <cstdint>

#include "mhdstab/field.hpp"

namespace mhdstab {

/// A candidate background field n together with its Diophantine certificate
/// on the truncated lattice |k|_inf <= K:
///   c_est = min_{0 < |k|_inf <= K} |n.k| |k|^r.
struct BackgroundField {
    Vec3 n{0.0, 0.0, 0.0};
    double r = 0.0;
    int K = 0;
    double c_est = 0.0;
    std::array<int, 3> k_min{0, 0, 0};
};

/// Exhaustive scan of the truncated lattice.  Ties on the minimum value are
/// broken toward smaller |k|, then lexicographically smaller k, so the
/// reported minimizer is reproducible.
/// Requires K >= 1, r > 2, n != 0.
BackgroundField scan_constant(const Vec3& n, double r, int K);

/// Result of checking one of the directional Sobolev inequalities.
struct MarginReport {
    double ratio = 0.0;    ///< ||f||_{H^s} / ||n.grad f||_{H^{s+r}} (0 if both vanish)
    double bound = 0.0;    ///< the constant the ratio is compared against
    bool holds = false;    ///< ratio <= bound
    bool mean_ok = true;   ///< zero-mean (or weighted-mean) precondition
    bool band_ok = true;   ///< field supported inside the certified lattice ball
    bool rho_ok = true;    ///< ||rho-1||_{L2} <= 1/2 (velocity variant only)
};

/// ||f||_{H^s} <= (1/c_est) ||n.grad f||_{H^{s+r}} for mean-zero band-limited f.
/// Throws PreconditionError when f has nonzero mean.
MarginReport verify_directional_inequality(const ScalarField& f,
                                           const BackgroundField& bg, double s);

/// Velocity variant without the zero-mean condition: requires
/// ||rho-1||_{L2} <= 1/2 and int rho u = 0; bound is 2 (1 + 1/c_est).
MarginReport verify_velocity_variant(const VectorField& u, const ScalarField& rho,
                                     const BackgroundField& bg, double s);

/// Draw n uniformly from [1,2]^3 with the given seed and certify it.
BackgroundField random_candidate(std::uint64_t seed, double r, int K);

} // namespace mhdstab
