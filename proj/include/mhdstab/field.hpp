#pragma once

#include <complex>
#include <vector>

#include "mhdstab/grid.hpp"

namespace mhdstab {

using cplx = std::complex<double>;

/// Pointwise samples of a real function on the physical grid.
struct RealField {
    GridPtr grid;
    std::vector<double> v;

    RealField() = default;
    explicit RealField(GridPtr g) : grid(std::move(g)), v(grid->size(), 0.0) {}

    double min() const;
    double max() const;
    double linf() const;
    /// Grid mean (the volume-1 integral).
    double mean() const;
};

RealField operator*(const RealField& a, const RealField& b);
RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);

/// Real scalar field stored as a full complex spectrum with conjugate
/// symmetry coeff(-k) = conj(coeff(k)).
class ScalarField {
  public:
    ScalarField() = default;
    explicit ScalarField(GridPtr g) : grid_(std::move(g)), c_(grid_->size(), cplx(0.0)) {}

    const GridPtr& grid() const { return grid_; }
    long size() const { return static_cast<long>(c_.size()); }
    cplx& operator[](long i) { return c_[i]; }
    const cplx& operator[](long i) const { return c_[i]; }
    std::vector<cplx>& coeffs() { return c_; }
    const std::vector<cplx>& coeffs() const { return c_; }

    cplx mean_mode() const { return c_.empty() ? cplx(0.0) : c_[0]; }

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);

    /// Add s * o (spectral axpy).
    void axpy(double s, const ScalarField& o);

    bool finite() const;

  private:
    GridPtr grid_;
    std::vector<cplx> c_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Three scalar components on one shared grid.
struct VectorField {
    std::array<ScalarField, 3> comp;

    VectorField() = default;
    explicit VectorField(const GridPtr& g) : comp{ScalarField(g), ScalarField(g), ScalarField(g)} {}

    const GridPtr& grid() const { return comp[0].grid(); }
    ScalarField& operator[](int i) { return comp[i]; }
    const ScalarField& operator[](int i) const { return comp[i]; }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);
    void axpy(double s, const VectorField& o);
    bool finite() const;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

} // namespace mhdstab
