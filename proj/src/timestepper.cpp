#include "mhdstab/timestepper.hpp"

#include <cmath>

namespace mhdstab {

void StepperConfig::validate() const {
    if (dt_max <= 0.0) throw ConfigError("time.dt_max must be > 0");
    if (cfl <= 0.0 || cfl > 1.0) throw ConfigError("time.cfl must be in (0,1]");
    if (t_end < 0.0) throw ConfigError("time.t_end must be >= 0");
    if (constraint_interval < 1) throw ConfigError("time.constraint_interval must be >= 1");
    if (sample_stride < 1) throw ConfigError("time.sample_stride must be >= 1");
}

namespace {

/// Cached per-mode exponential tables; a step uses h and h/2, and run loops
/// reuse the same dt nearly every step, so a few slots suffice.
struct ExpTable {
    int m = 0;
    double h = -1.0, kappa = -1.0, sigma = -1.0;
    std::vector<double> etheta, eb;
};

void fill_exp(std::vector<double>& out, const Grid& g, double coeff, double h) {
    out.resize(g.size());
    const int m = g.m();
    long idx = 0;
    for (int i = 0; i < m; ++i) {
        const double k1 = g.freq(i);
        for (int j = 0; j < m; ++j) {
            const double k2 = g.freq(j);
            for (int l = 0; l < m; ++l, ++idx) {
                const double k3 = g.freq(l);
                out[idx] = std::exp(-coeff * (k1 * k1 + k2 * k2 + k3 * k3) * h);
            }
        }
    }
}

/// Multiply theta by exp(-kappa|k|^2 h) and b by exp(-sigma|k|^2 h), in place.
void apply_diffusion_exp(State& s, double h, const Params& p) {
    const Grid& g = *s.grid();
    thread_local std::array<ExpTable, 4> cache;
    thread_local int next_slot = 0;
    ExpTable* tab = nullptr;
    for (auto& c : cache)
        if (c.m == g.m() && c.h == h && c.kappa == p.kappa && c.sigma == p.sigma)
            tab = &c;
    if (!tab) {
        tab = &cache[next_slot];
        next_slot = (next_slot + 1) % static_cast<int>(cache.size());
        tab->m = g.m();
        tab->h = h;
        tab->kappa = p.kappa;
        tab->sigma = p.sigma;
        if (p.kappa != 0.0) fill_exp(tab->etheta, g, p.kappa, h);
        if (p.sigma != 0.0) fill_exp(tab->eb, g, p.sigma, h);
    }
    const long n = g.size();
    if (p.kappa != 0.0)
        for (long i = 0; i < n; ++i) s.theta[i] *= tab->etheta[i];
    if (p.sigma != 0.0)
        for (long i = 0; i < n; ++i) {
            const double e = tab->eb[i];
            s.b[0][i] *= e;
            s.b[1][i] *= e;
            s.b[2][i] *= e;
        }
}

/// Non-stiff part of the tendency as a State (diffusion excluded).
State nonstiff_rhs(const State& s, const Params& p, RhsForm form) {
    Params pn = p;
    pn.kappa = 0.0;
    pn.sigma = 0.0;
    Tendency t = (form == RhsForm::Full) ? rhs(s, pn) : rhs_linear(s, pn);
    State out(s.grid());
    out.a = std::move(t.da);
    out.u = std::move(t.du);
    out.theta = std::move(t.dtheta);
    out.b = std::move(t.db);
    return out;
}

} // namespace

State step(const State& s, double dt, const Params& p, RhsForm form) {
    if (dt <= 0.0) throw ConfigError("step requires dt > 0");

    // Lawson integrating-factor RK4.  E_h is the exact diffusion propagator.
    State k1 = nonstiff_rhs(s, p, form);

    State y2 = s;
    y2.axpy(0.5 * dt, k1);
    apply_diffusion_exp(y2, 0.5 * dt, p);
    State k2 = nonstiff_rhs(y2, p, form);

    State y3 = s;
    apply_diffusion_exp(y3, 0.5 * dt, p);
    y3.axpy(0.5 * dt, k2);
    State k3 = nonstiff_rhs(y3, p, form);

    State y4 = s;
    apply_diffusion_exp(y4, 0.5 * dt, p);
    y4.axpy(dt, k3); // k3 lives at the half step
    apply_diffusion_exp(y4, 0.5 * dt, p);
    State k4 = nonstiff_rhs(y4, p, form);

    // y+ = E_h y + h/6 (E_h k1 + 2 E_{h/2} (k2 + k3) + k4)
    State out = s;
    apply_diffusion_exp(out, dt, p);
    apply_diffusion_exp(k1, dt, p);
    State mid = k2;
    mid += k3;
    apply_diffusion_exp(mid, 0.5 * dt, p);
    out.axpy(dt / 6.0, k1);
    out.axpy(dt / 3.0, mid);
    out.axpy(dt / 6.0, k4);
    return out;
}

double cfl_dt(const State& s, const Params& p, const StepperConfig& cfg) {
    const GridPtr& g = s.grid();
    const long n = g->size();
    const std::array<RealField, 3> u = to_physical(s.u);
    const std::array<RealField, 3> b = to_physical(s.b);
    const RealField theta = to_physical(s.theta);
    if (1.0 + theta.min() <= 0.0)
        throw VacuumError("cfl_dt: nonpositive temperature 1+theta");

    const double nmag = norm(p.n);
    double vmax = 0.0;
    for (long i = 0; i < n; ++i) {
        const double umag = std::sqrt(u[0].v[i] * u[0].v[i] + u[1].v[i] * u[1].v[i] +
                                      u[2].v[i] * u[2].v[i]);
        const double bmag = std::sqrt(b[0].v[i] * b[0].v[i] + b[1].v[i] * b[1].v[i] +
                                      b[2].v[i] * b[2].v[i]);
        const double sound = std::sqrt(2.0 * p.R * (1.0 + theta.v[i]));
        vmax = std::max(vmax, umag + sound + nmag + bmag);
    }
    const double dx = 2.0 * M_PI / g->m();
    if (vmax <= 0.0) return cfg.dt_max;
    return std::min(cfg.dt_max, cfg.cfl * dx / vmax);
}

RunResult run(const State& s0, const Params& p, const StepperConfig& cfg,
              const Sink& sink) {
    cfg.validate();
    p.validate();

    RunResult res{s0, {}};
    State& s = res.final_state;

    const double h2_initial = std::max(s.sobolev_norm(2.0), 1e-300);
    const double h2_ceiling = cfg.blowup_norm_factor * h2_initial;

    double t = 0.0;
    long nstep = 0;

    auto sample = [&](bool force) {
        if (!sink) return;
        if (!force && nstep % cfg.sample_stride != 0) return;
        Tendency tend = rhs(s, p);
        sink(t, nstep, s, tend);
    };

    auto check_health = [&]() -> bool {
        const Admissibility adm = admissibility(s);
        if (adm.vacuum) {
            res.status.blew_up = true;
            res.status.reason = "density floor reached: min(1+a) = " +
                                std::to_string(adm.min_density);
            return false;
        }
        const double h2 = s.sobolev_norm(2.0);
        if (!std::isfinite(h2) || h2 > h2_ceiling) {
            res.status.blew_up = true;
            res.status.reason = "H2 norm " + std::to_string(h2) +
                                " exceeded ceiling " + std::to_string(h2_ceiling);
            return false;
        }
        return true;
    };

    if (cfg.t_end > 0.0) sample(true);
    while (t < cfg.t_end - 1e-14) {
        double dt = 0.0;
        try {
            dt = std::min(cfl_dt(s, p, cfg), cfg.t_end - t);
            s = step(s, dt, p, RhsForm::Full);
        } catch (const VacuumError& e) {
            res.status.blew_up = true;
            res.status.reason = e.what();
            break;
        }
        t += dt;
        ++nstep;
        if (nstep % cfg.constraint_interval == 0) s = enforce_constraints(s);
        if (!check_health()) break;
        if (nstep % cfg.sample_stride == 0 && t < cfg.t_end - 1e-14) sample(true);
    }

    res.status.t = t;
    res.status.steps = nstep;
    res.status.completed = !res.status.blew_up;
    if (!res.status.blew_up && cfg.t_end > 0.0) sample(true);
    return res;
}

} // namespace mhdstab
