#include "mhdstab/diagnostics.hpp"

#include <cmath>

#include "mhdstab/rng.hpp"

namespace mhdstab {

void FunctionalConfig::validate() const {
    if (r <= 2.0) throw ConfigError("functional r must be > 2");
    if (big_n < 4.0 * r + 7.0)
        throw ConfigError("functional.big_n must satisfy N >= 4r+7");
    if (beta < r + 4.0 || beta >= big_n)
        throw ConfigError("functional.beta must lie in [r+4, N)");
    if (gamma <= 0.0) throw ConfigError("functional.gamma must be > 0");
}

double gamma_default(const Vec3& n) { return 32.0 * (1.0 + dot(n, n)); }

ConservedBlock conserved(const State& s, const Params& p) {
    (void)p;
    ConservedBlock out;
    out.mass_pert = s.a.mean_mode().real();

    const RealField a = to_physical(s.a);
    const RealField theta = to_physical(s.theta);
    const std::array<RealField, 3> u = to_physical(s.u);
    const std::array<RealField, 3> b = to_physical(s.b);
    const long n = a.grid->size();

    double mom[3] = {0, 0, 0};
    double energy = 0.0;
    for (long i = 0; i < n; ++i) {
        const double rho = 1.0 + a.v[i];
        double u2 = 0.0, b2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            mom[c] += rho * u[c].v[i];
            u2 += u[c].v[i] * u[c].v[i];
            b2 += b[c].v[i] * b[c].v[i];
        }
        energy += rho * theta.v[i] + 0.5 * rho * u2 + 0.5 * b2;
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (int c = 0; c < 3; ++c) out.momentum[c] = mom[c] * inv;
    out.total_energy = energy * inv;
    for (int c = 0; c < 3; ++c) out.b_mean[c] = s.b[c].mean_mode().real();
    return out;
}

BalanceReport dissipation_balance(const State& s, const Tendency& tend,
                                  const Params& p) {
    const long n = s.grid()->size();
    const RealField a = to_physical(s.a);
    const RealField theta = to_physical(s.theta);
    const std::array<RealField, 3> u = to_physical(s.u);
    const std::array<RealField, 3> b = to_physical(s.b);
    const RealField da = to_physical(tend.da);
    const RealField dtheta = to_physical(tend.dtheta);
    const std::array<RealField, 3> du = to_physical(tend.du);
    const std::array<RealField, 3> db = to_physical(tend.db);

    if (1.0 + a.min() <= kVacuumFloor || 1.0 + theta.min() <= kVacuumFloor)
        throw VacuumError("dissipation_balance: state outside the admissible band");

    std::array<RealField, 3> grad_theta;
    for (int ax = 0; ax < 3; ++ax) grad_theta[ax] = to_physical(derivative(s.theta, ax));
    const std::array<RealField, 3> curl_b = to_physical(curl(s.b));

    double phi = 0.0, dphi = 0.0, diss = 0.0;
    for (long i = 0; i < n; ++i) {
        const double rho = 1.0 + a.v[i];
        const double vt = 1.0 + theta.v[i];
        double u2 = 0.0, udu = 0.0, b2 = 0.0, bdb = 0.0, gt2 = 0.0, cb2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            u2 += u[c].v[i] * u[c].v[i];
            udu += u[c].v[i] * du[c].v[i];
            b2 += b[c].v[i] * b[c].v[i];
            bdb += b[c].v[i] * db[c].v[i];
            gt2 += grad_theta[c].v[i] * grad_theta[c].v[i];
            cb2 += curl_b[c].v[i] * curl_b[c].v[i];
        }
        phi += 0.5 * rho * u2 + (rho * std::log(rho) - rho + 1.0) +
               rho * (vt - std::log(vt) - 1.0) + 0.5 * b2;
        // d/dt of each piece by the chain rule; rho_t = da, vartheta_t = dtheta
        dphi += 0.5 * da.v[i] * u2 + rho * udu;
        dphi += da.v[i] * std::log(rho);
        dphi += da.v[i] * (vt - std::log(vt) - 1.0) +
                rho * (1.0 - 1.0 / vt) * dtheta.v[i];
        dphi += bdb;
        diss += p.kappa * gt2 / (vt * vt) + p.sigma * cb2 / vt;
    }
    const double inv = 1.0 / static_cast<double>(n);
    BalanceReport rep;
    rep.phi = phi * inv;
    rep.dphi_dt = dphi * inv;
    rep.dissipation = diss * inv;
    rep.residual = rep.dphi_dt + rep.dissipation;
    return rep;
}

double y_infinity(const State& s) {
    const RealField a = to_physical(s.a);
    const RealField theta = to_physical(s.theta);
    const std::array<RealField, 3> u = to_physical(s.u);
    const std::array<RealField, 3> b = to_physical(s.b);

    double sup0 = std::max(a.linf(), theta.linf());
    for (int c = 0; c < 3; ++c) sup0 = std::max({sup0, u[c].linf(), b[c].linf()});

    double sup_aub = a.linf();
    for (int c = 0; c < 3; ++c) sup_aub = std::max({sup_aub, u[c].linf(), b[c].linf()});

    double sup1 = 0.0, sup_gu = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
        sup1 = std::max(sup1, to_physical(derivative(s.a, ax)).linf());
        sup1 = std::max(sup1, to_physical(derivative(s.theta, ax)).linf());
        for (int c = 0; c < 3; ++c) {
            const double gu = to_physical(derivative(s.u[c], ax)).linf();
            sup_gu = std::max(sup_gu, gu);
            sup1 = std::max(sup1, gu);
            sup1 = std::max(sup1, to_physical(derivative(s.b[c], ax)).linf());
        }
    }
    const double lap_t = to_physical(laplacian(s.theta)).linf();
    const double sa = a.linf();

    return sup0 + (1.0 + sa * sa) * sup0 * sup0 + (1.0 + sa) * sup1 + lap_t +
           (1.0 + sup_aub * sup_aub + sup_gu * sup_gu) * sup1 * sup1;
}

namespace {

/// Accumulate the cross terms sum_s <L^s f, L^s g> for s = 0..s_max with the
/// homogeneous weight |k|^{2s}, spectrally.
double cross_sum(const ScalarField& f, const ScalarField& g, int s_max) {
    const Grid& grid = *f.grid();
    const int m = grid.m();
    double acc = 0.0;
    long idx = 0;
    for (int i = 0; i < m; ++i) {
        const double k1 = grid.freq(i);
        for (int j = 0; j < m; ++j) {
            const double k2 = grid.freq(j);
            for (int l = 0; l < m; ++l, ++idx) {
                const double k3 = grid.freq(l);
                const double kk = k1 * k1 + k2 * k2 + k3 * k3;
                const double re = f[idx].real() * g[idx].real() +
                                  f[idx].imag() * g[idx].imag();
                double w = 1.0; // s = 0 term: |k|^0, and k=0 contributes via s=0 only
                double total = (kk == 0.0) ? 1.0 : 0.0;
                if (kk != 0.0) {
                    total = 0.0;
                    for (int sx = 0; sx <= s_max; ++sx) {
                        total += w;
                        w *= kk;
                    }
                }
                acc += total * re;
            }
        }
    }
    return acc;
}

} // namespace

double lyapunov_E(const State& s, const FunctionalConfig& cfg, const Params& p) {
    cfg.validate();
    const double rp4 = cfg.r + 4.0;
    const double lead = s.sobolev_norm(rp4);
    double E = cfg.gamma * lead * lead;

    // weighted density term gamma int ((theta + a^2)/(1+a)^2) (Lambda^{r+4} a)^2
    {
        const RealField a = to_physical(s.a);
        const RealField theta = to_physical(s.theta);
        const RealField la =
            to_physical(bessel_multiplier(s.a, rp4, NormKind::Homogeneous));
        const long n = a.grid->size();
        double acc = 0.0;
        for (long i = 0; i < n; ++i) {
            const double rho = 1.0 + a.v[i];
            acc += (theta.v[i] + a.v[i] * a.v[i]) / (rho * rho) * la.v[i] * la.v[i];
        }
        E += cfg.gamma * acc / static_cast<double>(n);
    }

    // cross terms
    const int sm = cfg.s_max();
    const ScalarField div_u = divergence(s.u);
    const VectorField grad_a = gradient(s.a);
    const VectorField ndu = directional_derivative(s.u, p.n);
    for (int c = 0; c < 3; ++c) {
        E += cross_sum(s.u[c], grad_a[c], sm);
        E -= cross_sum(s.b[c], ndu[c], sm);
    }
    E += cross_sum(s.theta, div_u, sm);
    return E;
}

DissipationParts dissipation_parts(const State& s, const FunctionalConfig& cfg,
                                   const Params& p) {
    const double rp3 = cfg.r + 3.0;
    DissipationParts parts;
    const double ga = sobolev_norm(gradient(s.a), rp3);
    const double du = sobolev_norm(divergence(s.u), rp3);
    const double nu = sobolev_norm(directional_derivative(s.u, p.n), rp3);
    parts.grad_a_hr3 = ga * ga;
    parts.div_u_hr3 = du * du;
    parts.n_grad_u_hr3 = nu * nu;
    return parts;
}

double lyapunov_D(const State& s, const FunctionalConfig& cfg, const Params& p) {
    cfg.validate();
    const double rp4 = cfg.r + 4.0;
    double D = 0.0;
    const double gt = sobolev_norm(gradient(s.theta), rp4);
    D += cfg.gamma * p.kappa * gt * gt;
    double gb2 = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double gc = sobolev_norm(gradient(s.b[c]), rp4);
        gb2 += gc * gc;
    }
    D += cfg.gamma * p.sigma * gb2;
    const DissipationParts parts = dissipation_parts(s, cfg, p);
    D += parts.grad_a_hr3 + parts.div_u_hr3 + parts.n_grad_u_hr3;
    return D;
}

double decay_exponent(const FunctionalConfig& cfg) {
    if (cfg.beta < cfg.r + 4.0 || cfg.beta > cfg.big_n)
        throw ConfigError("functional.beta outside [r+4, N]");
    return 3.0 * (cfg.big_n - cfg.beta) / (2.0 * (cfg.big_n - cfg.r - 4.0));
}

DecayFit decay_fit(const std::vector<std::pair<double, double>>& series, double t_min) {
    std::vector<std::pair<double, double>> pts; // (log(1+t), log v)
    for (const auto& [t, v] : series) {
        if (t < t_min) continue;
        if (v <= 0.0) throw Error("decay_fit requires positive values");
        pts.emplace_back(std::log1p(t), std::log(v));
    }
    if (pts.size() < 10)
        throw PreconditionError("decay_fit requires at least 10 samples with t >= t_min");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double nn = static_cast<double>(pts.size());
    const double denom = nn * sxx - sx * sx;
    if (denom == 0.0) throw NumericalError("decay_fit: degenerate time window");

    DecayFit fit;
    fit.samples = static_cast<int>(pts.size());
    fit.slope = (nn * sxy - sx * sy) / denom;
    double logc = -std::numeric_limits<double>::infinity();
    for (const auto& [x, y] : pts) logc = std::max(logc, y - fit.slope * x);
    fit.c_best = std::exp(logc);
    return fit;
}

PoincareReport poincare_check(const State& s, const Params& p) {
    (void)p;
    PoincareReport rep;
    const double nt = sobolev_norm(s.theta, 0.0);
    const double gt = sobolev_norm(gradient(s.theta), 0.0);
    double gu2 = 0.0, gb2 = 0.0;
    for (int c = 0; c < 3; ++c) {
        const double gu = sobolev_norm(gradient(s.u[c]), 0.0);
        const double gb = sobolev_norm(gradient(s.b[c]), 0.0);
        gu2 += gu * gu;
        gb2 += gb * gb;
    }
    const double denom = gt * gt + gu2 * gu2 + gb2 * gb2;
    if (denom < 1e-30) {
        if (nt * nt < 1e-30) {
            rep.ratio = 0.0;
        } else {
            rep.degenerate = true;
            rep.ratio = std::numeric_limits<double>::infinity();
        }
        return rep;
    }
    rep.ratio = nt * nt / denom;
    return rep;
}

State prepare_initial_data(const State& raw, const Params& p,
                           PreparationReport* report) {
    PreparationReport rep;
    ConstraintReport crep;
    State s = enforce_constraints(raw, &crep);
    rep.a_mean_shift = crep.a_mean;
    rep.b_mean_shift = crep.b_mean;
    rep.leray_shift = crep.leray_change;

    // constant velocity shift solving int rho (u + du) = 0; int rho = 1 after
    // the mean of a was removed
    {
        const ConservedBlock c0 = conserved(s, p);
        for (int c = 0; c < 3; ++c) {
            rep.u_shift[c] = -c0.momentum[c];
            s.u[c][0] += rep.u_shift[c];
        }
    }

    // constant temperature shift zeroing the total energy
    {
        const ConservedBlock c1 = conserved(s, p);
        rep.theta_shift = -c1.total_energy; // int rho = 1
        s.theta[0] += rep.theta_shift;
        const double min_temp = 1.0 + to_physical(s.theta).min();
        if (min_temp <= 0.0)
            throw PreparationError(
                "prepare_initial_data: required theta shift violates 1+theta > 0");
    }

    const Admissibility adm = admissibility(s);
    if (adm.vacuum)
        throw PreparationError("prepare_initial_data: state is not admissible");

    if (report) *report = rep;
    return s;
}

double gamma_positivity_margin(const FunctionalConfig& cfg, const Params& p,
                               const GridPtr& grid, int samples, std::uint64_t seed) {
    Rng rng(seed);
    const double rp4 = cfg.r + 4.0;
    double worst = std::numeric_limits<double>::infinity();
    for (int it = 0; it < samples; ++it) {
        State s(grid);
        const int band = std::min(4, grid->dealias_cutoff());
        for (int i = -band; i <= band; ++i)
            for (int j = -band; j <= band; ++j)
                for (int l = -band; l <= band; ++l) {
                    if (i == 0 && j == 0 && l == 0) continue;
                    const long idx = grid->index(grid->index_of_freq(i),
                                                 grid->index_of_freq(j),
                                                 grid->index_of_freq(l));
                    s.a[idx] = rng.complex_gaussian();
                    s.theta[idx] = rng.complex_gaussian();
                    for (int c = 0; c < 3; ++c) {
                        s.u[c][idx] = rng.complex_gaussian();
                        s.b[c][idx] = rng.complex_gaussian();
                    }
                }
        symmetrize(s.a);
        symmetrize(s.theta);
        symmetrize(s.u);
        symmetrize(s.b);
        s.b = leray_project(s.b);
        const double nn = s.sobolev_norm(rp4);
        if (nn == 0.0) continue;
        s *= 1e-2 / nn;
        const double lead = s.sobolev_norm(rp4);
        const double E = lyapunov_E(s, cfg, p);
        worst = std::min(worst, E - 0.5 * cfg.gamma * lead * lead);
    }
    return worst;
}

DiagnosticsRecord sample_diagnostics(double t, const State& s, const Tendency& tend,
                                     const Params& p, const FunctionalConfig& cfg) {
    DiagnosticsRecord rec;
    rec.t = t;
    rec.l2_a = sobolev_norm(s.a, 0.0);
    rec.l2_u = sobolev_norm(s.u, 0.0);
    rec.l2_theta = sobolev_norm(s.theta, 0.0);
    rec.l2_b = sobolev_norm(s.b, 0.0);
    rec.h_beta = s.sobolev_norm(cfg.beta);
    rec.h_r4 = s.sobolev_norm(cfg.r + 4.0);
    rec.E = lyapunov_E(s, cfg, p);
    rec.D = lyapunov_D(s, cfg, p);
    rec.y_inf = y_infinity(s);

    const ConservedBlock cons = conserved(s, p);
    rec.mass_pert = cons.mass_pert;
    rec.momentum = cons.momentum;
    rec.b_mean = cons.b_mean;
    rec.total_energy = cons.total_energy;

    rec.divb_max = max_spectral_divergence(s.b);
    rec.min_density = 1.0 + to_physical(s.a).min();

    const BalanceReport bal = dissipation_balance(s, tend, p);
    rec.balance_residual = bal.residual;
    rec.balance_dissipation = bal.dissipation;
    rec.phi_entropy = bal.phi;

    rec.poincare_margin = poincare_check(s, p).ratio;
    rec.d_parts = dissipation_parts(s, cfg, p);
    return rec;
}

} // namespace mhdstab
