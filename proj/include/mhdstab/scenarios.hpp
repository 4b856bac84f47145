#pragma once

#include <cstdint>
#include <string>

#include "mhdstab/mhd_system.hpp"

namespace mhdstab {

/// Named initial-condition generators.
///
/// random_band: random phases on the shells 1 <= |k|_inf <= 4 for the density,
/// temperature, magnetic (solenoidal) and the dilatational part of the
/// velocity, normalized so the combined H^{r+4} norm equals the amplitude.
/// The dilatational restriction excites exactly the wave-coupled components
/// whose decay the stability analysis controls; solenoidal velocity at
/// magnetically near-resonant wavevectors is undamped on desk-scale horizons
/// (its rates fall below (n.k)^2/(sigma|k|^2) ~ 1e-4 inside the band) and is
/// available separately as random_band_full.
///
/// random_band_full: same, plus the solenoidal velocity content.
///
/// steepening: u = A sin(x1) e1 plus a small density ripple; drives the
/// Euler-comparison scenario.
///
/// shear_b: b-only transverse shear mode b = A cos(x1) e2.
State make_initial_condition(const std::string& kind, const GridPtr& grid,
                             double amplitude, std::uint64_t seed, double r_plus_4);

} // namespace mhdstab
