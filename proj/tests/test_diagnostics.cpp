#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mhdstab/diagnostics.hpp"
#include "test_helpers.hpp"

using namespace mhdstab;
using namespace mhdstab::test;

namespace {

Params default_params() {
    Params p;
    p.n = {1.0, std::sqrt(2.0), std::sqrt(3.0)};
    return p;
}

FunctionalConfig default_functional(const Params& p) {
    FunctionalConfig fc;
    fc.r = 2.5;
    fc.big_n = 17.0;
    fc.beta = 6.5;
    fc.gamma = gamma_default(p.n);
    return fc;
}

State random_prepared_state(const GridPtr& g, std::uint64_t seed, double h4,
                            const Params& p) {
    Rng rng(seed);
    State s(g);
    s.a = random_scalar(g, rng, 3);
    s.theta = random_scalar(g, rng, 3);
    s.u = random_vector(g, rng, 3);
    s.b = leray_project(random_vector(g, rng, 3));
    s *= h4 / s.sobolev_norm(4.0);
    return prepare_initial_data(s, p);
}

} // namespace

TEST_CASE("conserved quantities on simple states") {
    const GridPtr g = Grid::create(16);
    const Params p = default_params();

    const ConservedBlock zero = conserved(State(g), p);
    CHECK(zero.mass_pert == 0.0);
    CHECK(zero.total_energy == 0.0);
    for (int c = 0; c < 3; ++c) {
        CHECK(zero.momentum[c] == 0.0);
        CHECK(zero.b_mean[c] == 0.0);
    }

    // prepared data: all conserved quantities vanish to rounding
    const State s = random_prepared_state(g, 5, 0.05, p);
    const ConservedBlock cb = conserved(s, p);
    CHECK(std::abs(cb.mass_pert) <= 1e-12);
    CHECK(std::abs(cb.total_energy) <= 1e-12);
    for (int c = 0; c < 3; ++c) {
        CHECK(std::abs(cb.momentum[c]) <= 1e-12);
        CHECK(std::abs(cb.b_mean[c]) <= 1e-14);
    }
}

TEST_CASE("dissipation balance: zero state and b-only shear state") {
    const GridPtr g = Grid::create(32);
    const Params p = default_params();

    const State z(g);
    const BalanceReport rz = dissipation_balance(z, rhs(z, p), p);
    CHECK(rz.residual == 0.0);
    CHECK(rz.phi == 0.0);

    // b-only small shear state: residual tiny relative to dissipation
    State s(g);
    set_cosine(s.b[1], 1, 0, 0, 1e-2);
    const BalanceReport rb = dissipation_balance(s, rhs(s, p), p);
    CHECK(rb.dissipation > 0.0);
    CHECK(std::abs(rb.residual) <= 1e-9 * rb.dissipation + 1e-20);
}

TEST_CASE("dissipation balance: random small admissible states") {
    const GridPtr g = Grid::create(32);
    const Params p = default_params();
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const State s = random_prepared_state(g, seed, 1e-2, p);
        const BalanceReport r = dissipation_balance(s, rhs(s, p), p);
        CHECK(std::abs(r.residual) <= 1e-8 * (r.dissipation + 1e-30));
    }
}

TEST_CASE("y_infinity closed form for a single density mode") {
    const GridPtr g = Grid::create(16);
    const double eps = 0.1;
    State s(g);
    set_cosine(s.a, 1, 0, 0, eps);
    // eps + (1+eps^2) eps^2 + (1+eps) eps + 0 + (1+eps^2) eps^2
    const double expected = eps + (1.0 + eps * eps) * eps * eps + (1.0 + eps) * eps +
                            (1.0 + eps * eps) * eps * eps;
    CHECK(y_infinity(s) == doctest::Approx(expected).epsilon(1e-10));
    CHECK(y_infinity(State(g)) == 0.0);
}

TEST_CASE("y_infinity scales linearly for small states") {
    const GridPtr g = Grid::create(16);
    Rng rng(8);
    State base(g);
    base.a = random_scalar(g, rng, 3);
    base.theta = random_scalar(g, rng, 3);
    base.u = random_vector(g, rng, 3);
    base.b = leray_project(random_vector(g, rng, 3));
    base *= 1.0 / base.sobolev_norm(4.0);

    double prev = 0.0;
    for (double eps : {1e-2, 1e-4}) {
        State s = base;
        s *= eps;
        const double ratio = y_infinity(s) / eps;
        if (prev != 0.0) CHECK(ratio == doctest::Approx(prev).epsilon(0.05));
        prev = ratio;
    }
}

TEST_CASE("lyapunov functionals: zero state and theta-only closed form") {
    const GridPtr g = Grid::create(16);
    const Params p = default_params();
    const FunctionalConfig fc = default_functional(p);

    CHECK(lyapunov_E(State(g), fc, p) == 0.0);
    CHECK(lyapunov_D(State(g), fc, p) == 0.0);

    // theta = eps cos(x1): E = gamma (1+1)^{r+4} eps^2/2 (cross terms vanish,
    // weighted-a term vanishes since a = 0 makes (Lambda^{r+4} a)^2 = 0)
    const double eps = 1e-3;
    State s(g);
    set_cosine(s.theta, 1, 0, 0, eps);
    const double lead = std::pow(2.0, fc.r + 4.0) * eps * eps / 2.0;
    CHECK(lyapunov_E(s, fc, p) == doctest::Approx(fc.gamma * lead).epsilon(1e-12));

    // D = gamma kappa ||grad theta||^2_{H^{r+4}} = gamma kappa (1+1)^{r+4} |k|^2 eps^2/2
    CHECK(lyapunov_D(s, fc, p) ==
          doctest::Approx(fc.gamma * p.kappa * lead).epsilon(1e-12));
}

TEST_CASE("lyapunov E positivity margin with the default gamma") {
    const GridPtr g = Grid::create(16);
    const Params p = default_params();
    const FunctionalConfig fc = default_functional(p);
    CHECK(fc.gamma == doctest::Approx(32.0 * 7.0));
    const double margin = gamma_positivity_margin(fc, p, g, 20, 99);
    CHECK(margin > 0.0);
}

TEST_CASE("decay exponent formula") {
    FunctionalConfig fc;
    fc.r = 2.5;
    fc.big_n = 17.0;
    fc.beta = 6.5;
    CHECK(decay_exponent(fc) == doctest::Approx(1.5).epsilon(1e-15));

    fc.beta = 10.0;
    CHECK(decay_exponent(fc) == doctest::Approx(1.0).epsilon(1e-15));

    fc.beta = 17.0; // endpoint allowed here, exponent 0
    CHECK(decay_exponent(fc) == 0.0);

    fc.beta = 5.0; // below r+4
    CHECK_THROWS_AS(decay_exponent(fc), ConfigError);
    fc.beta = 18.0;
    CHECK_THROWS_AS(decay_exponent(fc), ConfigError);
}

TEST_CASE("decay_fit recovers synthetic power laws") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i <= 100; ++i) {
        const double t = 0.2 * i;
        series.emplace_back(t, std::pow(1.0 + t, -3.0));
    }
    const DecayFit fit = decay_fit(series, 0.0);
    CHECK(fit.slope == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(fit.c_best == doctest::Approx(1.0).epsilon(1e-6));

    // exponential decays fit steeper than any power law on late windows
    std::vector<std::pair<double, double>> exp_series;
    for (int i = 0; i <= 100; ++i) {
        const double t = 5.0 + 0.3 * i;
        exp_series.emplace_back(t, std::exp(-t));
    }
    const DecayFit efit = decay_fit(exp_series, 5.0);
    CHECK(efit.slope < -3.0);

    // error paths
    std::vector<std::pair<double, double>> short_series(series.begin(),
                                                        series.begin() + 5);
    CHECK_THROWS_AS(decay_fit(short_series, 0.0), PreconditionError);
    std::vector<std::pair<double, double>> bad = series;
    bad[3].second = 0.0;
    CHECK_THROWS_AS(decay_fit(bad, 0.0), Error);
}

TEST_CASE("poincare_check") {
    const GridPtr g = Grid::create(16);
    const Params p = default_params();

    const PoincareReport zero = poincare_check(State(g), p);
    CHECK(zero.ratio == 0.0);
    CHECK(!zero.degenerate);

    // theta = eps cos(x1) with compensation: ratio -> 1 at leading order
    const double eps = 1e-3;
    State s(g);
    set_cosine(s.theta, 1, 0, 0, eps);
    // compensate (conser3) with a constant theta shift (O(eps^2), negligible)
    const PoincareReport r = poincare_check(prepare_initial_data(s, p), p);
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-4));

    // constant theta with zero gradients is degenerate
    State c(g);
    c.theta[0] = cplx(0.5, 0.0);
    const PoincareReport rd = poincare_check(c, p);
    CHECK(rd.degenerate);
}

TEST_CASE("prepare_initial_data") {
    const GridPtr g = Grid::create(16);
    const Params p = default_params();

    // already-prepared data needs no corrections
    const State s = random_prepared_state(g, 13, 0.05, p);
    PreparationReport rep;
    const State again = prepare_initial_data(s, p, &rep);
    CHECK(rep.a_mean_shift <= 1e-14);
    CHECK(rep.b_mean_shift <= 1e-14);
    CHECK(std::abs(rep.theta_shift) <= 1e-13);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(rep.u_shift[c]) <= 1e-13);
    (void)again;

    // a = 0, random u: theta shift equals -(1/2) int |u|^2
    Rng rng(21);
    State raw(g);
    raw.u = random_vector(g, rng, 3);
    raw.u *= 0.1 / sobolev_norm(raw.u, 0.0);
    const double expected_shift = -0.5 * 0.1 * 0.1;
    prepare_initial_data(raw, p, &rep);
    CHECK(rep.theta_shift == doctest::Approx(expected_shift).epsilon(1e-10));

    // nonzero b mean is removed exactly
    State withb(g);
    withb.b[2][0] = cplx(0.25, 0.0);
    const State fixed = prepare_initial_data(withb, p, &rep);
    CHECK(std::abs(fixed.b[2].mean_mode()) == 0.0);
    CHECK(rep.b_mean_shift == doctest::Approx(0.25).epsilon(1e-14));

    // impossible theta shift fails loudly
    State hot(g);
    Rng rng2(3);
    hot.u = random_vector(g, rng2, 2);
    hot.u *= 2.0 / sobolev_norm(hot.u, 0.0); // (1/2)||u||^2 = 2 -> shift -2
    CHECK_THROWS_AS(prepare_initial_data(hot, p), PreparationError);
}

TEST_CASE("functional config validation") {
    FunctionalConfig fc;
    fc.r = 2.5;
    fc.big_n = 17.0;
    fc.beta = 6.5;
    fc.gamma = 1.0;
    CHECK_NOTHROW(fc.validate());
    CHECK(fc.s_max() == 5);

    FunctionalConfig bad = fc;
    bad.big_n = 16.0; // < 4r+7 = 17
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = fc;
    bad.beta = 17.0; // must be < N for runs
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = fc;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
