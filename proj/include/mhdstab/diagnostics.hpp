#pragma once

#include <optional>
#include <vector>

#include "mhdstab/mhd_system.hpp"

namespace mhdstab {

/// Sobolev indices and the coupling weight of the Lyapunov machinery.
struct FunctionalConfig {
    double big_n = 17.0; ///< N >= 4r+7
    double beta = 6.5;   ///< report index, r+4 <= beta < N
    double r = 2.5;      ///< Diophantine exponent from the certificate
    double gamma = 0.0;  ///< coupling weight; 0 selects the default 32(1+|n|^2)

    int s_max() const { return static_cast<int>(std::floor(r + 3.0)); }
    void validate() const;
};

/// Default coupling weight 32(1+|n|^2).
double gamma_default(const Vec3& n);

struct ConservedBlock {
    double mass_pert = 0.0;  ///< int a
    Vec3 momentum{0, 0, 0};  ///< int rho u
    Vec3 b_mean{0, 0, 0};    ///< int b
    double total_energy = 0.0; ///< int rho theta + 1/2 int rho|u|^2 + 1/2 int |b|^2
};
ConservedBlock conserved(const State& s, const Params& p);

struct BalanceReport {
    double dphi_dt = 0.0;      ///< chain-rule derivative of the modified energy
    double dissipation = 0.0;  ///< kappa int |grad vt|^2/vt^2 + sigma int |curl b|^2/vt
    double residual = 0.0;     ///< dphi_dt + dissipation (0 in the continuum)
    double phi = 0.0;          ///< the modified energy itself
};

/// Exact dissipation identity of the modified energy
/// Phi = 1/2 int rho|u|^2 + int(rho ln rho - rho + 1) + int rho(vt - ln vt - 1)
///       + 1/2 int |b|^2.
/// tend must be rhs(s, p).
BalanceReport dissipation_balance(const State& s, const Tendency& tend, const Params& p);

/// The low-order sup-norm functional driving the high-order energy estimate.
double y_infinity(const State& s);

/// E(t) = gamma ||(a,u,th,b)||^2_{H^{r+4}}
///        + gamma int ((th+a^2)/(1+a)^2) (Lambda^{r+4} a)^2
///        + sum_{s=0..floor(r+3)} (<L^s u, L^s grad a> + <L^s th, L^s div u>
///                                  - <L^s b, L^s n.grad u>)
/// with Lambda the homogeneous multiplier.
double lyapunov_E(const State& s, const FunctionalConfig& cfg, const Params& p);

/// D(t) = gamma kappa ||grad th||^2_{H^{r+4}} + gamma sigma ||grad b||^2_{H^{r+4}}
///        + ||grad a||^2_{H^{r+3}} + ||div u||^2_{H^{r+3}} + ||n.grad u||^2_{H^{r+3}}
double lyapunov_D(const State& s, const FunctionalConfig& cfg, const Params& p);

/// The three velocity-side dissipation constituents of D, for inspection.
struct DissipationParts {
    double grad_a_hr3 = 0.0;
    double div_u_hr3 = 0.0;
    double n_grad_u_hr3 = 0.0;
};
DissipationParts dissipation_parts(const State& s, const FunctionalConfig& cfg,
                                   const Params& p);

/// Theorem decay exponent 3(N-beta)/(2(N-r-4)); beta may equal N (exponent 0).
double decay_exponent(const FunctionalConfig& cfg);

struct DecayFit {
    double slope = 0.0;  ///< least-squares slope of log(value) vs log(1+t)
    double c_best = 0.0; ///< smallest C with value <= C (1+t)^slope on the window
    int samples = 0;
};

/// Fit a power law to (t, value) samples with t >= t_min.
/// Requires >= 10 usable samples, all values > 0.
DecayFit decay_fit(const std::vector<std::pair<double, double>>& series, double t_min);

struct PoincareReport {
    double ratio = 0.0;      ///< ||th||^2 / (||grad th||^2 + ||grad u||^4 + ||grad b||^4)
    bool degenerate = false; ///< denominator below 1e-30 with nonzero numerator
};
PoincareReport poincare_check(const State& s, const Params& p);

struct PreparationReport {
    double a_mean_shift = 0.0;
    double b_mean_shift = 0.0;
    double leray_shift = 0.0;
    Vec3 u_shift{0, 0, 0};
    double theta_shift = 0.0;
};

/// Make raw data satisfy the conservation constraints: zero means of a and b,
/// project b, shift u by the constant that zeroes int rho u, shift theta by
/// the constant that zeroes the total energy.  Throws PreparationError when
/// the theta shift would violate 1+theta > 0.
State prepare_initial_data(const State& raw, const Params& p,
                           PreparationReport* report = nullptr);

/// Positivity self-check for the coupling weight: on random small states,
/// E >= 1/2 gamma ||.||^2_{H^{r+4}}.  Returns the worst margin observed
/// (positive means the check passed).
double gamma_positivity_margin(const FunctionalConfig& cfg, const Params& p,
                               const GridPtr& grid, int samples, std::uint64_t seed);

/// One time-sample of everything the run sink records.
struct DiagnosticsRecord {
    double t = 0.0;
    double l2_a = 0.0, l2_u = 0.0, l2_theta = 0.0, l2_b = 0.0;
    double h_beta = 0.0; ///< combined H^beta norm (the theorem's report index)
    double h_r4 = 0.0;   ///< combined H^{r+4} norm
    double E = 0.0, D = 0.0, y_inf = 0.0;
    double mass_pert = 0.0;
    Vec3 momentum{0, 0, 0};
    Vec3 b_mean{0, 0, 0};
    double total_energy = 0.0;
    double phi_entropy = 0.0; ///< the modified energy Phi
    double divb_max = 0.0;
    double min_density = 0.0;
    double balance_residual = 0.0;
    double balance_dissipation = 0.0;
    double poincare_margin = 0.0;
    DissipationParts d_parts;
};

DiagnosticsRecord sample_diagnostics(double t, const State& s, const Tendency& tend,
                                     const Params& p, const FunctionalConfig& cfg);

} // namespace mhdstab
