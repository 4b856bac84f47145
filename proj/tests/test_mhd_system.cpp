#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhdstab/mhd_system.hpp"
#include "test_helpers.hpp"

using namespace mhdstab;
using namespace mhdstab::test;

namespace {

const Vec3 kN{1.0, std::sqrt(2.0), std::sqrt(3.0)};

Params default_params() {
    Params p;
    p.n = kN;
    return p;
}

/// Random admissible state, band-limited to |k|_inf <= 4, scaled to the
/// requested H^4 norm, with b projected divergence free.
State random_state(const GridPtr& g, std::uint64_t seed, double h4_norm) {
    Rng rng(seed);
    State s(g);
    s.a = random_scalar(g, rng, 4);
    s.theta = random_scalar(g, rng, 4);
    s.u = random_vector(g, rng, 4);
    s.b = random_vector(g, rng, 4);
    s.b = leray_project(s.b);
    const double nn = s.sobolev_norm(4.0);
    s *= h4_norm / nn;
    return s;
}

double rel_l2(const ScalarField& got, const ScalarField& want) {
    return l2_diff(got, want) / std::max(sobolev_norm(want, 0.0), 1e-300);
}
double rel_l2(const VectorField& got, const VectorField& want) {
    return l2_diff(got, want) / std::max(sobolev_norm(want, 0.0), 1e-300);
}

} // namespace

TEST_CASE("nonlinear terms vanish at equilibrium") {
    const GridPtr g = Grid::create(16);
    const State s(g);
    const NonlinearTerms nl = nonlinear_terms(s, default_params());
    CHECK(sobolev_norm(nl.f1, 0.0) == 0.0);
    CHECK(sobolev_norm(nl.f2, 0.0) == 0.0);
    CHECK(sobolev_norm(nl.f3, 0.0) == 0.0);
    CHECK(sobolev_norm(nl.f4, 0.0) == 0.0);
}

TEST_CASE("f1 trig identity: a = A cos x1, u = A sin x1 e1") {
    // amplitude 1/2 keeps min(1+a) above the vacuum floor
    const double A = 0.5;
    const GridPtr g = Grid::create(32);
    State s(g);
    set_cosine(s.a, 1, 0, 0, A);
    set_sine(s.u[0], 1, 0, 0, A);

    // f1 = -u da/dx - a du/dx = A^2 (sin^2 - cos^2) = -A^2 cos(2x)
    const NonlinearTerms nl = nonlinear_terms(s, default_params());
    ScalarField expected(g);
    set_cosine(expected, 2, 0, 0, -A * A);
    CHECK(linf_diff(nl.f1, expected) <= 1e-13);
}

TEST_CASE("f2, f3 for a single magnetic shear mode") {
    const GridPtr g = Grid::create(32);
    Params p = default_params();
    p.sigma = 1.7;
    const double eps = 0.25;
    State s(g);
    set_cosine(s.b[1], 1, 0, 0, eps); // b = eps cos(x1) e2

    const NonlinearTerms nl = nonlinear_terms(s, p);

    // curl b = -eps sin(x1) e3, |curl b|^2 = eps^2 sin^2 = eps^2 (1-cos 2x)/2
    ScalarField f3_expected(g);
    f3_expected[0] = cplx(p.sigma * eps * eps / 2.0, 0.0);
    set_cosine(f3_expected, 2, 0, 0, -p.sigma * eps * eps / 2.0);
    CHECK(linf_diff(nl.f3, f3_expected) <= 1e-13);

    // b.grad b = 0 (no variation along e2); grad(|b|^2/2) = -eps^2/2 sin(2x) e1 * ...
    // |b|^2/2 = eps^2 cos^2/2, d/dx1 = -eps^2 sin(2x1)/2 * ... = -eps^2/2 * sin(2 x1)
    // f2 = -grad(|b|^2/2) + I(0)*(...) = +eps^2/2 sin(2x1) e1
    ScalarField f2x_expected(g);
    set_sine(f2x_expected, 2, 0, 0, eps * eps / 2.0);
    CHECK(linf_diff(nl.f2[0], f2x_expected) <= 1e-13);
    CHECK(sobolev_norm(nl.f2[1], 0.0) <= 1e-14);
    CHECK(sobolev_norm(nl.f2[2], 0.0) <= 1e-14);
    CHECK(sobolev_norm(nl.f4, 0.0) <= 1e-14);
}

TEST_CASE("f1 integral identity: nonlinearity conserves the mean of a") {
    const GridPtr g = Grid::create(32);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const State s = random_state(g, seed, 0.5);
        const NonlinearTerms nl = nonlinear_terms(s, default_params());
        CHECK(std::abs(nl.f1.mean_mode()) <= 1e-12);
    }
}

TEST_CASE("vacuum error below the density floor") {
    const GridPtr g = Grid::create(16);
    State s(g);
    set_cosine(s.a, 1, 0, 0, 1.2); // min(1+a) < 0
    CHECK_THROWS_AS(nonlinear_terms(s, default_params()), VacuumError);

    State s2(g);
    set_cosine(s2.a, 1, 0, 0, 0.96); // min(1+a) = 0.04 <= 0.05
    CHECK_THROWS_AS(nonlinear_terms(s2, default_params()), VacuumError);
}

TEST_CASE("admissibility warning band below |a| = 1/2") {
    const GridPtr g = Grid::create(16);
    State s(g);
    set_cosine(s.a, 1, 0, 0, 0.7); // min(1+a) = 0.3: warn, not vacuum
    const Admissibility adm = admissibility(s);
    CHECK(!adm.vacuum);
    CHECK(adm.warning);
    CHECK(adm.min_density == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_NOTHROW(nonlinear_terms(s, default_params()));

    State ok(g);
    set_cosine(ok.a, 1, 0, 0, 0.1);
    CHECK(!admissibility(ok).warning);
}

TEST_CASE("rhs: zero state is an equilibrium") {
    const GridPtr g = Grid::create(16);
    const Tendency t = rhs(State(g), default_params());
    CHECK(sobolev_norm(t.da, 0.0) == 0.0);
    CHECK(sobolev_norm(t.du, 0.0) == 0.0);
    CHECK(sobolev_norm(t.dtheta, 0.0) == 0.0);
    CHECK(sobolev_norm(t.db, 0.0) == 0.0);
}

TEST_CASE("rhs: single temperature mode") {
    const GridPtr g = Grid::create(16);
    Params p = default_params();
    p.kappa = 0.8;
    p.R = 1.3;
    State s(g);
    set_cosine(s.theta, 1, 0, 0, 1.0);

    const Tendency t = rhs(s, p);

    // dtheta = kappa lap theta = -kappa cos(x1); the only nonlinear piece,
    // -kappa I(a) lap theta, vanishes since a = 0
    ScalarField dth_expected(g);
    set_cosine(dth_expected, 1, 0, 0, -p.kappa);
    CHECK(linf_diff(t.dtheta, dth_expected) <= 1e-13);

    // du = -R grad theta = R sin(x1) e1
    ScalarField dux_expected(g);
    set_sine(dux_expected, 1, 0, 0, p.R);
    CHECK(linf_diff(t.du[0], dux_expected) <= 1e-13);
    CHECK(sobolev_norm(t.da, 0.0) <= 1e-14);
    CHECK(sobolev_norm(t.db, 0.0) <= 1e-14);
}

TEST_CASE("primitive rhs: equilibrium and shear forcing") {
    const GridPtr g = Grid::create(32);
    Params p = default_params();
    p.sigma = 0.9;
    p.kappa = 1.1;

    // (1, 0, 1, n) is an equilibrium
    PrimitiveState eq(g);
    eq.rho[0] = cplx(1.0, 0.0);
    eq.vartheta[0] = cplx(1.0, 0.0);
    for (int c = 0; c < 3; ++c) eq.h[c][0] = cplx(p.n[c], 0.0);
    const PrimitiveTendency te = primitive_rhs(eq, p);
    CHECK(sobolev_norm(te.drho, 0.0) == 0.0);
    CHECK(sobolev_norm(te.du, 0.0) <= 1e-14);
    CHECK(sobolev_norm(te.dvartheta, 0.0) <= 1e-14);
    CHECK(sobolev_norm(te.dh, 0.0) == 0.0);

    // equilibrium plus a magnetic shear mode
    const double eps = 0.2;
    PrimitiveState ps = eq;
    set_cosine(ps.h[1], 1, 0, 0, eps);
    const PrimitiveTendency t = primitive_rhs(ps, p);

    // h_t = sigma lap h: -sigma eps cos(x1) e2
    ScalarField dh_expected(g);
    set_cosine(dh_expected, 1, 0, 0, -p.sigma * eps);
    CHECK(linf_diff(t.dh[1], dh_expected) <= 1e-13);

    // vartheta_t = sigma |curl h|^2 (rho = 1)
    ScalarField dvt_expected(g);
    dvt_expected[0] = cplx(p.sigma * eps * eps / 2.0, 0.0);
    set_cosine(dvt_expected, 2, 0, 0, -p.sigma * eps * eps / 2.0);
    CHECK(linf_diff(t.dvartheta, dvt_expected) <= 1e-13);

    // u_t = (curl h) x h
    // curl h = -eps sin(x1) e3; (curl h) x h with h = n + eps cos e2
    // = -eps sin(x1) [e3 x (n + eps cos e2)]
    ScalarField dux(g), duy(g), duz(g);
    // e3 x n = (-n2, n1, 0); e3 x e2 = -e1
    set_sine(dux, 1, 0, 0, eps * p.n[1]);
    set_sine(duy, 1, 0, 0, -eps * p.n[0]);
    // eps^2 sin cos term on e1: +eps^2 sin(x1)cos(x1) = eps^2 sin(2x1)/2
    set_sine(dux, 2, 0, 0, eps * eps / 2.0);
    CHECK(linf_diff(t.du[0], dux) <= 1e-13);
    CHECK(linf_diff(t.du[1], duy) <= 1e-13);
    CHECK(sobolev_norm(t.du[2], 0.0) <= 1e-14);
    (void)duz;
}

TEST_CASE("primitive conversion round trip") {
    const GridPtr g = Grid::create(16);
    const Params p = default_params();

    const State zero(g);
    const PrimitiveState ps = to_primitive(zero, p);
    CHECK(ps.rho[0] == cplx(1.0, 0.0));
    CHECK(ps.vartheta[0] == cplx(1.0, 0.0));
    for (int c = 0; c < 3; ++c) CHECK(ps.h[c][0] == cplx(p.n[c], 0.0));

    const State s = random_state(g, 9, 0.3);
    const State back = from_primitive(to_primitive(s, p), p);
    CHECK(l2_diff(back.a, s.a) <= 1e-15);
    CHECK(l2_diff(back.theta, s.theta) <= 1e-15);
    CHECK(l2_diff(back.u, s.u) <= 1e-15);
    CHECK(l2_diff(back.b, s.b) <= 1e-15);

    State ripple(g);
    set_cosine(ripple.a, 1, 0, 0, 0.1);
    const PrimitiveState pr = to_primitive(ripple, p);
    RealField rho = to_physical(pr.rho);
    CHECK(rho.max() == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(rho.min() == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("master oracle: perturbation rhs equals transformed primitive rhs") {
    const GridPtr g = Grid::create(32);
    const Params p = default_params();
    int worst_seed = -1;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const State s = random_state(g, seed, 0.1);
        const Tendency t = rhs(s, p);
        const PrimitiveTendency pt = primitive_rhs(to_primitive(s, p), p);
        // the change of variables is affine, so tendencies map identically
        const double e1 = rel_l2(t.da, pt.drho);
        const double e2 = rel_l2(t.du, pt.du);
        const double e3 = rel_l2(t.dtheta, pt.dvartheta);
        const double e4 = rel_l2(t.db, pt.dh);
        const double e = std::max({e1, e2, e3, e4});
        if (e > worst) {
            worst = e;
            worst_seed = static_cast<int>(seed);
        }
        CHECK(e1 <= 1e-8);
        CHECK(e2 <= 1e-8);
        CHECK(e3 <= 1e-8);
        CHECK(e4 <= 1e-8);
    }
    INFO("worst relative error ", worst, " at seed ", worst_seed);
}

TEST_CASE("oracle equivalence holds away from R = 1") {
    const GridPtr g = Grid::create(32);
    Params p = default_params();
    p.R = 1.7;
    p.kappa = 0.6;
    p.sigma = 1.4;
    const State s = random_state(g, 31, 0.1);
    const Tendency t = rhs(s, p);
    const PrimitiveTendency pt = primitive_rhs(to_primitive(s, p), p);
    CHECK(rel_l2(t.da, pt.drho) <= 1e-8);
    CHECK(rel_l2(t.du, pt.du) <= 1e-8);
    CHECK(rel_l2(t.dtheta, pt.dvartheta) <= 1e-8);
    CHECK(rel_l2(t.db, pt.dh) <= 1e-8);
}

TEST_CASE("variable-coefficient theta equation agrees with rhs") {
    const GridPtr g = Grid::create(32);
    const Params p = default_params();
    const State s = random_state(g, 17, 0.1);
    const Tendency t = rhs(s, p);
    const ScalarField alt = theta_rhs_variable_coeff(s, p);
    CHECK(rel_l2(alt, t.dtheta) <= 1e-8);
}

TEST_CASE("linearization consistency: (rhs(eps s) - eps L s)/eps^2 bounded") {
    const GridPtr g = Grid::create(32);
    const Params p = default_params();
    const State base = random_state(g, 23, 1.0);

    double prev_ratio = 0.0;
    for (double eps : {1e-3, 1e-4}) {
        State scaled = base;
        scaled *= eps;
        const Tendency full = rhs(scaled, p);
        const Tendency lin = rhs_linear(scaled, p);
        State diff(g);
        diff.a = full.da - lin.da;
        diff.u = full.du - lin.du;
        diff.theta = full.dtheta - lin.dtheta;
        diff.b = full.db - lin.db;
        const double ratio = diff.sobolev_norm(0.0) / (eps * eps);
        CHECK(ratio < 100.0); // stays bounded as eps -> 0
        if (prev_ratio != 0.0)
            CHECK(ratio == doctest::Approx(prev_ratio).epsilon(0.05));
        prev_ratio = ratio;
    }
}

TEST_CASE("db stays divergence free") {
    const GridPtr g = Grid::create(32);
    const Params p = default_params();
    const State s = random_state(g, 41, 0.1);
    REQUIRE(max_spectral_divergence(s.b) <= 1e-12);
    const Tendency t = rhs(s, p);
    CHECK(max_spectral_divergence(t.db) <= 1e-12);
}

TEST_CASE("enforce_constraints") {
    const GridPtr g = Grid::create(16);

    // admissible state passes through nearly unchanged
    State s = random_state(g, 3, 0.1);
    ConstraintReport rep;
    const State out = enforce_constraints(s, &rep);
    CHECK(rep.a_mean <= 1e-14);
    CHECK(rep.b_mean <= 1e-14);
    CHECK(rep.leray_change <= 1e-12);

    // a mean drift is removed and reported
    State drift = s;
    drift.a[0] = cplx(1e-6, 0.0);
    const State fixed = enforce_constraints(drift, &rep);
    CHECK(rep.a_mean == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(std::abs(fixed.a.mean_mode()) == 0.0);

    // injected gradient component of b is projected away
    State graded = s;
    ScalarField phi(g);
    set_sine(phi, 1, 1, 0, 0.1);
    const VectorField gp = gradient(phi);
    graded.b += gp;
    const State cleaned = enforce_constraints(graded, &rep);
    CHECK(max_spectral_divergence(cleaned.b) <= 1e-13);
    CHECK(rep.leray_change == doctest::Approx(sobolev_norm(gp, 0.0)).epsilon(1e-10));
    (void)out;
}
