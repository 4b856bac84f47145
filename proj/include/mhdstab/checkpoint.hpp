#pragma once

#include <string>

#include "mhdstab/mhd_system.hpp"

namespace mhdstab {

/// Binary checkpoint: magic "MHDS", u32 version, u32 M, params block
/// (R, kappa, sigma, c_nu, n[3], t as f64), then the complex spectral
/// coefficients of the 8 component fields (a, u1, u2, u3, theta, b1, b2, b3)
/// field-major in k-lexicographic order, little-endian f64 pairs.
struct Checkpoint {
    Params params;
    double t = 0.0;
    State state;
};

void save_checkpoint(const std::string& path, const State& s, const Params& p, double t);
Checkpoint load_checkpoint(const std::string& path);

} // namespace mhdstab
