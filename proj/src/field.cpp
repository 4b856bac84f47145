#include "mhdstab/field.hpp"

#include <algorithm>
#include <cmath>

namespace mhdstab {

double RealField::min() const { return *std::min_element(v.begin(), v.end()); }
double RealField::max() const { return *std::max_element(v.begin(), v.end()); }
double RealField::linf() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}
double RealField::mean() const {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

RealField operator*(const RealField& a, const RealField& b) {
    RealField r(a.grid);
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] * b.v[i];
    return r;
}
RealField operator+(const RealField& a, const RealField& b) {
    RealField r(a.grid);
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] + b.v[i];
    return r;
}
RealField operator-(const RealField& a, const RealField& b) {
    RealField r(a.grid);
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
    return r;
}
RealField operator*(double s, const RealField& a) {
    RealField r(a.grid);
    for (size_t i = 0; i < r.v.size(); ++i) r.v[i] = s * a.v[i];
    return r;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}
ScalarField& ScalarField::operator*=(double s) {
    for (auto& z : c_) z *= s;
    return *this;
}
void ScalarField::axpy(double s, const ScalarField& o) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += s * o.c_[i];
}
bool ScalarField::finite() const {
    for (const auto& z : c_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
ScalarField operator*(double s, ScalarField a) { a *= s; return a; }

VectorField& VectorField::operator+=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) comp[i] += o.comp[i];
    return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
    for (int i = 0; i < 3; ++i) comp[i] -= o.comp[i];
    return *this;
}
VectorField& VectorField::operator*=(double s) {
    for (int i = 0; i < 3; ++i) comp[i] *= s;
    return *this;
}
void VectorField::axpy(double s, const VectorField& o) {
    for (int i = 0; i < 3; ++i) comp[i].axpy(s, o.comp[i]);
}
bool VectorField::finite() const {
    return comp[0].finite() && comp[1].finite() && comp[2].finite();
}

VectorField operator+(VectorField a, const VectorField& b) { a += b; return a; }
VectorField operator-(VectorField a, const VectorField& b) { a -= b; return a; }
VectorField operator*(double s, VectorField a) { a *= s; return a; }

} // namespace mhdstab
