#pragma once

#include "mhdstab/field.hpp"

namespace mhdstab {

/// Which Fourier weight a norm or smoothing operator uses.
/// Inhomogeneous: (1+|k|^2)^{s/2} (the J^s multiplier / H^s norm).
/// Homogeneous:   |k|^s           (the Lambda^s multiplier / Hdot^s norm).
enum class NormKind { Inhomogeneous, Homogeneous };

// ---- transforms ----------------------------------------------------------

RealField to_physical(const ScalarField& f);
ScalarField from_physical(const RealField& p);
std::array<RealField, 3> to_physical(const VectorField& v);

// ---- multipliers and derivatives -----------------------------------------

/// d/dx_axis as the exact multiplier i k_axis.
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// n.grad f, multiplier i(n.k).
ScalarField directional_derivative(const ScalarField& f, const Vec3& n);
VectorField directional_derivative(const VectorField& v, const Vec3& n);

/// Lambda^s (homogeneous, zero at k=0) or J^s (inhomogeneous), per kind.
/// Throws DegenerateModeError for homogeneous s<0 on a field with nonzero mean.
ScalarField bessel_multiplier(const ScalarField& f, double s, NormKind kind);

// ---- dealiasing and constraints -------------------------------------------

/// 2/3-rule: zero every mode with any |k_i| > floor(M/3).
void dealias_inplace(ScalarField& f);
ScalarField dealias(const ScalarField& f);
void dealias_inplace(VectorField& v);

/// Zero the Nyquist planes k_i = M/2 (they break conjugate symmetry under
/// odd multipliers).  Returns the L2 size of what was removed.
double zero_nyquist(ScalarField& f);
double zero_nyquist(VectorField& v);

/// Project onto the conjugate-symmetric (real-valued) part.
void symmetrize(ScalarField& f);
void symmetrize(VectorField& v);
/// Max |coeff(-k) - conj(coeff(k))| over all modes.
double conjugate_symmetry_error(const ScalarField& f);

/// Helmholtz-Leray projection: remove k (k.v)/|k|^2 per mode; k=0 untouched.
VectorField leray_project(const VectorField& v);
/// max_k |k . v(k)|.
double max_spectral_divergence(const VectorField& v);

// ---- norms and inner products ---------------------------------------------

/// Sobolev norm with the volume-1 convention: constants have L2 norm equal
/// to their absolute value.  Throws InvalidFieldError on non-finite input.
double sobolev_norm(const ScalarField& f, double s,
                    NormKind kind = NormKind::Inhomogeneous);
double sobolev_norm(const VectorField& v, double s,
                    NormKind kind = NormKind::Inhomogeneous);

/// L2 inner product int f g dx (volume 1), computed spectrally.
double inner_product(const ScalarField& f, const ScalarField& g);
double inner_product(const VectorField& f, const VectorField& g);

} // namespace mhdstab
