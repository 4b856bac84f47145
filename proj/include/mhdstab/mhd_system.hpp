#pragma once

#include "mhdstab/spectral.hpp"

namespace mhdstab {

/// Physical parameters of the perturbation system.  c_nu is fixed to 1.
struct Params {
    double R = 1.0;     ///< gas constant in P = R rho vartheta
    double kappa = 1.0; ///< heat conduction
    double sigma = 1.0; ///< magnetic diffusivity
    double c_nu = 1.0;
    Vec3 n{0.0, 0.0, 0.0}; ///< background magnetic field

    void validate() const;
};

/// Perturbation variables (a, u, theta, b) = (rho-1, u, vartheta-1, h-n).
struct State {
    ScalarField a;
    VectorField u;
    ScalarField theta;
    VectorField b;

    State() = default;
    explicit State(const GridPtr& g) : a(g), u(g), theta(g), b(g) {}

    const GridPtr& grid() const { return a.grid(); }

    State& operator+=(const State& o);
    State& operator*=(double s);
    void axpy(double s, const State& o);

    /// sqrt of the sum of squared H^s norms over all 8 scalar components.
    double sobolev_norm(double s, NormKind kind = NormKind::Inhomogeneous) const;
};

State operator+(State a, const State& b);
State operator*(double s, State a);

/// Pointwise admissibility minima, evaluated on the physical grid.
struct Admissibility {
    double min_density = 0.0;     ///< min(1 + a)
    double min_temperature = 0.0; ///< min(1 + theta)
    bool vacuum = false;          ///< min density <= vacuum floor (0.05)
    bool warning = false;         ///< min density below the |a|<=1/2 band
};
Admissibility admissibility(const State& s);

inline constexpr double kVacuumFloor = 0.05;
inline constexpr double kWarningFloor = 0.5;

/// The four nonlinearities of the perturbation system.
struct NonlinearTerms {
    ScalarField f1;
    VectorField f2;
    ScalarField f3;
    VectorField f4;
};

/// Time derivative of a State, with the nonlinear pieces retained.
struct Tendency {
    ScalarField da;
    VectorField du;
    ScalarField dtheta;
    VectorField db;
    NonlinearTerms nl;
};

/// Evaluate f1..f4 with all products formed in physical space and dealiased.
/// The compact notations resolve as b grad b := grad(|b|^2/2) and
/// n grad b := grad(n.b); f3 carries sigma on |curl b|^2 and, for R != 1,
/// the extra (1-R)(1+theta) div u that the change to perturbation form
/// produces (it vanishes at the default R = 1).
/// Throws VacuumError when min(1+a) <= 0.05.
NonlinearTerms nonlinear_terms(const State& s, const Params& p);

/// Full right-hand side of the perturbation system:
///   da    = -div u + f1
///   du    = -R grad a - R grad theta + n.grad b - grad(n.b) + f2
///   dth   = kappa lap theta - div u + f3
///   db    = sigma lap b + n.grad u - n div u + f4
Tendency rhs(const State& s, const Params& p);

/// Linearization only (all f_i = 0); used by the stepper tests and the
/// per-mode analysis cross-checks.
Tendency rhs_linear(const State& s, const Params& p);

/// theta equation evaluated in the variable-coefficient diffusion form
/// div(kappa/(1+a) grad theta) - div u + F3; equals rhs().dtheta up to
/// aliasing at desk scale (equivalence oracle).
ScalarField theta_rhs_variable_coeff(const State& s, const Params& p);

/// The primitive variables (rho, u, vartheta, h) of the original system.
struct PrimitiveState {
    ScalarField rho;
    VectorField u;
    ScalarField vartheta;
    VectorField h;

    explicit PrimitiveState(const GridPtr& g) : rho(g), u(g), vartheta(g), h(g) {}
};

struct PrimitiveTendency {
    ScalarField drho;
    VectorField du;
    ScalarField dvartheta;
    VectorField dh;
};

/// The original system solved for time derivatives, with P = R rho vartheta:
///   rho_t      = -div(rho u)
///   u_t        = -u.grad u - grad P / rho + [(curl h) x h] / rho
///   vartheta_t = -u.grad vartheta + [kappa lap vartheta - P div u
///                 + sigma |curl h|^2] / rho
///   h_t        = sigma lap h - u.grad h + h.grad u - h div u
PrimitiveTendency primitive_rhs(const PrimitiveState& ps, const Params& p);

PrimitiveState to_primitive(const State& s, const Params& p);
State from_primitive(const PrimitiveState& ps, const Params& p);

/// Sizes of the corrections applied by enforce_constraints.
struct ConstraintReport {
    double a_mean = 0.0;
    double b_mean = 0.0;        ///< euclidean size of the removed mean
    double leray_change = 0.0;  ///< L2 size of the removed gradient part
    double nyquist_change = 0.0;
};

/// Zero the means of a and b, project b onto divergence-free fields, zero
/// Nyquist planes.  Reports the size of each correction.
State enforce_constraints(const State& s, ConstraintReport* report = nullptr);

} // namespace mhdstab
