#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "mhdstab/mhd_system.hpp"

namespace mhdstab {

using Mat8 = Eigen::Matrix<std::complex<double>, 8, 8>;

/// Per-mode linearization of the perturbation system acting on
/// (a, u1, u2, u3, theta, b1, b2, b3).  The 7-dimensional physical subspace
/// is k.b = 0; the constraint direction is an exact eigenvector with
/// eigenvalue -sigma|k|^2 and does not feed back.
struct ModeSystem {
    std::array<int, 3> k{0, 0, 0};
    Mat8 matrix;
};

ModeSystem mode_matrix(const std::array<int, 3>& k, const Params& p);

/// Eigenvalues of the restriction to the physical subspace, from a dense
/// solve in extended precision; sorted by real part descending, ties by
/// imaginary part descending.  Requires k != 0.
std::vector<std::complex<double>> spectrum(const ModeSystem& ms);

/// Closed-form roots of lambda^2 + sigma|k|^2 lambda + (n.k)^2 = 0, the
/// transverse shear dispersion relation.  Evaluated with the cancellation-free
/// quadratic formula so the small root is accurate even when (n.k)^2 is tiny.
std::array<std::complex<double>, 2> reduced_dispersion(const std::array<int, 3>& k,
                                                       const Params& p);

/// Per-mode eigenvalues computed from the exact structural split: the
/// transverse pair along k x n decouples in closed form, the coupled core is
/// solved densely.  At modes with n.k == 0 the frozen shear directions give
/// eigenvalue 0 exactly.  Used by the abscissa scan; cross-checked against
/// spectrum() in the tests.
std::vector<std::complex<double>> mode_eigenvalues_split(const std::array<int, 3>& k,
                                                         const Params& p);

struct AbscissaEntry {
    std::array<int, 3> k;
    double ndotk = 0.0;
    double abscissa = 0.0;
    std::vector<std::complex<double>> eigenvalues; // 7, sorted
};

struct AbscissaScan {
    std::vector<AbscissaEntry> entries;
    double global = 0.0;
    std::array<int, 3> argmax{0, 0, 0};
};

/// Spectral abscissa over every mode 0 < |k|_inf <= K.
AbscissaScan abscissa_scan(const Params& p, int K);

/// Max residual of the three wave-structure symbol identities at mode k:
/// the a / div u wave, the u / b degenerate wave (as the composed-block
/// matrix identity), and the div u / theta wave.  Zero up to rounding.
double wave_equation_check(const std::array<int, 3>& k, const Params& p);

} // namespace mhdstab
