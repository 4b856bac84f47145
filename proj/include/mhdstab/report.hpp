#pragma once

#include <string>
#include <vector>

#include "mhdstab/diagnostics.hpp"

namespace mhdstab {

/// series.csv with the fixed column contract:
/// t, l2_a, l2_u, l2_theta, l2_b, h_r4, E, D, Y_inf, mass_pert, mom1, mom2,
/// mom3, total_energy, divb_max, min_density, balance_residual,
/// poincare_margin -- floats printed with 17 significant digits.
void write_series_csv(const std::string& path,
                      const std::vector<DiagnosticsRecord>& series);

/// Log-log SVG of h_r4 and E against (1+t) with a reference slope line.
void write_decay_svg(const std::string& path,
                     const std::vector<DiagnosticsRecord>& series,
                     double reference_slope);

struct HeatmapSlice {
    int k3 = 0;
    int K = 0;
    /// abscissa indexed by [k1+K][k2+K]
    std::vector<std::vector<double>> value;
};

/// Panels of abscissa heat maps over (k1,k2) at fixed k3 slices.
void write_abscissa_svg(const std::string& path,
                        const std::vector<HeatmapSlice>& slices);

/// Two-branch comparison plot of ||grad u||_inf against t (linear axes).
void write_compare_svg(const std::string& path,
                       const std::vector<std::pair<double, double>>& branch_a,
                       const std::vector<std::pair<double, double>>& branch_b,
                       const std::string& label_a, const std::string& label_b);

} // namespace mhdstab
