#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"

using namespace mhdstab;
using namespace mhdstab::test;

TEST_CASE("grid construction and wavevector enumeration") {
    CHECK_THROWS_AS(Grid::create(7), ConfigError);
    CHECK_THROWS_AS(Grid::create(6), ConfigError);
    const GridPtr g = Grid::create(16);
    CHECK(g->m() == 16);
    CHECK(g->dealias_cutoff() == 5);
    // bijection onto {-M/2+1..M/2}
    std::vector<int> seen(17, 0);
    for (int i = 0; i < 16; ++i) {
        const int f = g->freq(i);
        CHECK(f >= -7);
        CHECK(f <= 8);
        seen[f + 8]++;
        CHECK(g->index_of_freq(f) == i);
    }
    for (int f = -7; f <= 8; ++f) CHECK(seen[f + 8] == 1);
}

TEST_CASE("sobolev norm: constants, single modes, errors") {
    const GridPtr g = Grid::create(16);
    ScalarField f(g);
    CHECK(sobolev_norm(f, 3.0) == 0.0);

    f[0] = cplx(3.0, 0.0); // f == 3
    CHECK(sobolev_norm(f, 7.0) == doctest::Approx(3.0).epsilon(1e-14));

    ScalarField c1(g);
    set_cosine(c1, 1, 0, 0, 1.0); // cos(x1)
    CHECK(sobolev_norm(c1, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    // norm^2 = 2 * (1+1)^s * 1/4
    CHECK(sobolev_norm(c1, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));

    ScalarField bad(g);
    bad[3] = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(sobolev_norm(bad, 0.0), InvalidFieldError);
}

TEST_CASE("sobolev norm monotone in s") {
    const GridPtr g = Grid::create(16);
    Rng rng(7);
    const ScalarField f = random_scalar(g, rng, 5);
    double prev = sobolev_norm(f, -1.0);
    for (double s : {-0.5, 0.0, 0.5, 1.0, 2.0, 3.5}) {
        const double cur = sobolev_norm(f, s);
        CHECK(cur >= prev * (1.0 - 1e-13));
        prev = cur;
    }
}

TEST_CASE("Parseval: L2 norm equals physical mean square") {
    const GridPtr g = Grid::create(16);
    Rng rng(42);
    for (int it = 0; it < 20; ++it) {
        const ScalarField f = random_scalar(g, rng, 7, false);
        const RealField p = to_physical(f);
        double ms = 0.0;
        for (double x : p.v) ms += x * x;
        ms /= static_cast<double>(p.v.size());
        const double n2 = sobolev_norm(f, 0.0);
        CHECK(n2 * n2 == doctest::Approx(ms).epsilon(1e-12));
    }
}

TEST_CASE("transform round trip") {
    const GridPtr g = Grid::create(16);
    Rng rng(3);
    const ScalarField f = random_scalar(g, rng, 7, false);
    const ScalarField back = from_physical(to_physical(f));
    CHECK(l2_diff(f, back) <= 1e-12 * sobolev_norm(f, 0.0));
}

TEST_CASE("directional derivative") {
    const GridPtr g = Grid::create(16);

    ScalarField c(g);
    c[0] = cplx(5.0, 0.0);
    const ScalarField dc = directional_derivative(c, {1.0, 2.0, 3.0});
    CHECK(sobolev_norm(dc, 0.0) == 0.0);

    ScalarField s1(g);
    set_sine(s1, 1, 0, 0, 1.0);
    ScalarField expected(g);
    set_cosine(expected, 1, 0, 0, 1.0);
    CHECK(linf_diff(directional_derivative(s1, {1.0, 0.0, 0.0}), expected) <= 1e-15);

    // sin(x1+x2) with n = (1, sqrt2, 0) -> (1+sqrt2) cos(x1+x2)
    ScalarField s12(g);
    set_sine(s12, 1, 1, 0, 1.0);
    ScalarField exp12(g);
    set_cosine(exp12, 1, 1, 0, 1.0 + std::sqrt(2.0));
    CHECK(linf_diff(directional_derivative(s12, {1.0, std::sqrt(2.0), 0.0}), exp12) <=
          1e-14);

    // conjugate symmetry preserved
    Rng rng(11);
    const ScalarField f = random_scalar(g, rng, 5);
    CHECK(conjugate_symmetry_error(directional_derivative(f, {0.3, -1.7, 2.2})) <= 1e-14);
}

TEST_CASE("leray projection") {
    const GridPtr g = Grid::create(16);

    // gradient fields are annihilated
    ScalarField phi(g);
    set_sine(phi, 1, 2, 0, 1.0);
    const VectorField gphi = gradient(phi);
    const VectorField pg = leray_project(gphi);
    CHECK(sobolev_norm(pg, 0.0) <= 1e-14);

    // divergence-free fields unchanged; projection idempotent
    Rng rng(5);
    VectorField v = random_vector(g, rng, 5);
    const VectorField pv = leray_project(v);
    CHECK(max_spectral_divergence(pv) <= 1e-13);
    CHECK(l2_diff(leray_project(pv), pv) <= 1e-14);

    // single-mode arithmetic: v(k)=(1,1,0) at k=(1,0,0) -> (0,1,0)
    VectorField w(g);
    const long idx = g->index(1, 0, 0);
    w[0][idx] = cplx(1.0, 0.0);
    w[1][idx] = cplx(1.0, 0.0);
    const VectorField pw = leray_project(w);
    CHECK(std::abs(pw[0][idx]) <= 1e-16);
    CHECK(std::abs(pw[1][idx] - cplx(1.0, 0.0)) <= 1e-16);
    CHECK(std::abs(pw[2][idx]) <= 1e-16);
    // k=0 mode untouched
    VectorField z(g);
    z[0][0] = cplx(2.5, 0.0);
    CHECK(std::abs(leray_project(z)[0][0] - cplx(2.5, 0.0)) == 0.0);
}

TEST_CASE("dealias 2/3 rule") {
    const GridPtr g = Grid::create(32);
    CHECK(g->dealias_cutoff() == 10);

    ScalarField f(g);
    set_cosine(f, 3, 0, 0, 1.0);
    set_cosine(f, 11, 0, 0, 1.0);
    ScalarField d = dealias(f);
    ScalarField expected(g);
    set_cosine(expected, 3, 0, 0, 1.0);
    CHECK(linf_diff(d, expected) == 0.0);

    // physical product cos(5x)^2 dealiased == (1+cos(10x))/2 exactly
    ScalarField c5(g);
    set_cosine(c5, 5, 0, 0, 1.0);
    const RealField p = to_physical(c5);
    ScalarField prod = from_physical(p * p);
    dealias_inplace(prod);
    ScalarField sym(g);
    sym[0] = cplx(0.5, 0.0);
    set_cosine(sym, 10, 0, 0, 0.5);
    CHECK(linf_diff(prod, sym) <= 1e-14);
}

TEST_CASE("bessel multiplier") {
    const GridPtr g = Grid::create(16);
    Rng rng(9);
    const ScalarField f = random_scalar(g, rng, 5, false);

    // s = 0 is the identity in both conventions
    CHECK(linf_diff(bessel_multiplier(f, 0.0, NormKind::Homogeneous), f) == 0.0);
    CHECK(linf_diff(bessel_multiplier(f, 0.0, NormKind::Inhomogeneous), f) == 0.0);

    ScalarField c1(g);
    set_cosine(c1, 1, 0, 0, 1.0);
    CHECK(linf_diff(bessel_multiplier(c1, 1.0, NormKind::Homogeneous), c1) <= 1e-15);

    ScalarField c2(g);
    set_cosine(c2, 2, 0, 0, 1.0);
    ScalarField expect(g);
    set_cosine(expect, 2, 0, 0, std::pow(2.0, 2.5));
    CHECK(linf_diff(bessel_multiplier(c2, 2.5, NormKind::Homogeneous), expect) <= 1e-14);

    // negative-order homogeneous multiplier rejects nonzero mean
    ScalarField with_mean = c2;
    with_mean[0] = cplx(1.0, 0.0);
    CHECK_THROWS_AS(bessel_multiplier(with_mean, -1.0, NormKind::Homogeneous),
                    DegenerateModeError);
    CHECK_NOTHROW(bessel_multiplier(c2, -1.0, NormKind::Homogeneous));
}

TEST_CASE("multipliers commute: directional derivative vs bessel") {
    const GridPtr g = Grid::create(16);
    Rng rng(13);
    const ScalarField f = random_scalar(g, rng, 5);
    const Vec3 n{1.0, std::sqrt(2.0), std::sqrt(3.0)};
    const ScalarField ab =
        bessel_multiplier(directional_derivative(f, n), 1.5, NormKind::Inhomogeneous);
    const ScalarField ba =
        directional_derivative(bessel_multiplier(f, 1.5, NormKind::Inhomogeneous), n);
    CHECK(linf_diff(ab, ba) <= 1e-13 * std::max(1.0, sobolev_norm(f, 3.0)));
}

TEST_CASE("nyquist zeroing") {
    const GridPtr g = Grid::create(16);
    ScalarField f(g);
    f[g->index(8, 0, 0)] = cplx(1.0, 0.0); // k1 = M/2
    f[g->index(1, 0, 0)] = cplx(1.0, 0.0);
    const double removed = zero_nyquist(f);
    CHECK(removed == doctest::Approx(1.0));
    CHECK(std::abs(f[g->index(8, 0, 0)]) == 0.0);
    CHECK(std::abs(f[g->index(1, 0, 0)]) == 1.0);
}
