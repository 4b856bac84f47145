#include "mhdstab/mhd_system.hpp"

#include <cmath>

namespace mhdstab {

void Params::validate() const {
    if (R <= 0.0) throw ConfigError("params.R must be > 0");
    if (kappa < 0.0) throw ConfigError("params.kappa must be >= 0");
    if (sigma < 0.0) throw ConfigError("params.sigma must be >= 0");
    if (c_nu != 1.0) throw ConfigError("params.c_nu is fixed to 1");
}

State& State::operator+=(const State& o) {
    a += o.a;
    u += o.u;
    theta += o.theta;
    b += o.b;
    return *this;
}
State& State::operator*=(double s) {
    a *= s;
    u *= s;
    theta *= s;
    b *= s;
    return *this;
}
void State::axpy(double s, const State& o) {
    a.axpy(s, o.a);
    u.axpy(s, o.u);
    theta.axpy(s, o.theta);
    b.axpy(s, o.b);
}
State operator+(State a, const State& b) { a += b; return a; }
State operator*(double s, State a) { a *= s; return a; }

double State::sobolev_norm(double s, NormKind kind) const {
    const double na = mhdstab::sobolev_norm(a, s, kind);
    const double nu = mhdstab::sobolev_norm(u, s, kind);
    const double nt = mhdstab::sobolev_norm(theta, s, kind);
    const double nb = mhdstab::sobolev_norm(b, s, kind);
    return std::sqrt(na * na + nu * nu + nt * nt + nb * nb);
}

Admissibility admissibility(const State& s) {
    Admissibility adm;
    adm.min_density = 1.0 + to_physical(s.a).min();
    adm.min_temperature = 1.0 + to_physical(s.theta).min();
    adm.vacuum = adm.min_density <= kVacuumFloor;
    adm.warning = adm.min_density < kWarningFloor;
    return adm;
}

namespace {

/// Physical-space snapshots shared by the nonlinear terms.
struct PhysState {
    RealField a, theta, div_u;
    std::array<RealField, 3> u, b, grad_a, grad_theta;
    std::array<std::array<RealField, 3>, 3> grad_u, grad_b; // [component][axis]
    RealField lap_theta;

    explicit PhysState(const State& s)
        : a(to_physical(s.a)),
          theta(to_physical(s.theta)),
          div_u(to_physical(divergence(s.u))),
          u(to_physical(s.u)),
          b(to_physical(s.b)),
          lap_theta(to_physical(laplacian(s.theta))) {
        for (int ax = 0; ax < 3; ++ax) {
            grad_a[ax] = to_physical(derivative(s.a, ax));
            grad_theta[ax] = to_physical(derivative(s.theta, ax));
        }
        for (int c = 0; c < 3; ++c)
            for (int ax = 0; ax < 3; ++ax) {
                grad_u[c][ax] = to_physical(derivative(s.u[c], ax));
                grad_b[c][ax] = to_physical(derivative(s.b[c], ax));
            }
    }
};

void require_no_vacuum(const RealField& a_phys) {
    const double mn = 1.0 + a_phys.min();
    if (mn <= kVacuumFloor)
        throw VacuumError("density floor violated: min(1+a) = " + std::to_string(mn));
}

ScalarField spectral_dealiased(const RealField& p) {
    ScalarField f = from_physical(p);
    dealias_inplace(f);
    return f;
}

} // namespace

NonlinearTerms nonlinear_terms(const State& s, const Params& p) {
    const GridPtr& g = s.grid();
    const long n = g->size();
    PhysState ph(s);
    require_no_vacuum(ph.a);

    const double R = p.R;
    NonlinearTerms out;

    // f1 = -u.grad a - a div u
    {
        RealField w(g);
        for (long i = 0; i < n; ++i) {
            double adv = 0.0;
            for (int ax = 0; ax < 3; ++ax) adv += ph.u[ax].v[i] * ph.grad_a[ax].v[i];
            w.v[i] = -adv - ph.a.v[i] * ph.div_u.v[i];
        }
        out.f1 = spectral_dealiased(w);
    }

    // Pointwise composition helpers: I(a) = a/(1+a), grad J(a) = grad a/(1+a).
    RealField Ia(g), inv_rho(g);
    for (long i = 0; i < n; ++i) {
        const double rho = 1.0 + ph.a.v[i];
        inv_rho.v[i] = 1.0 / rho;
        Ia.v[i] = ph.a.v[i] / rho;
    }

    // f2 = -u.grad u + b.grad b - grad(|b|^2/2) + R I(a) grad a
    //      - R theta grad J(a) - I(a)(n.grad b + b.grad b - grad(n.b) - grad(|b|^2/2))
    {
        out.f2 = VectorField(g);
        for (int c = 0; c < 3; ++c) {
            RealField w(g);
            for (long i = 0; i < n; ++i) {
                double u_gu = 0.0, b_gb = 0.0, half_g_b2 = 0.0;
                for (int ax = 0; ax < 3; ++ax) {
                    u_gu += ph.u[ax].v[i] * ph.grad_u[c][ax].v[i];
                    b_gb += ph.b[ax].v[i] * ph.grad_b[c][ax].v[i];
                    // d/dx_c (|b|^2/2) = sum_j b_j d b_j/dx_c
                    half_g_b2 += ph.b[ax].v[i] * ph.grad_b[ax][c].v[i];
                }
                double n_gb = 0.0, g_nb = 0.0;
                for (int ax = 0; ax < 3; ++ax) {
                    n_gb += p.n[ax] * ph.grad_b[c][ax].v[i]; // (n.grad b)_c
                    g_nb += p.n[ax] * ph.grad_b[ax][c].v[i]; // d/dx_c (n.b)
                }
                const double grad_J = ph.grad_a[c].v[i] * inv_rho.v[i];
                w.v[i] = -u_gu + b_gb - half_g_b2 + R * Ia.v[i] * ph.grad_a[c].v[i] -
                         R * ph.theta.v[i] * grad_J -
                         Ia.v[i] * (n_gb + b_gb - g_nb - half_g_b2);
            }
            out.f2[c] = spectral_dealiased(w);
        }
    }

    // f3 = -div(theta u) - kappa I(a) lap theta + sigma |curl b|^2 / (1+a)
    //      + (1-R)(1+theta) div u
    {
        RealField w(g);
        for (long i = 0; i < n; ++i) {
            double div_theta_u = ph.theta.v[i] * ph.div_u.v[i];
            for (int ax = 0; ax < 3; ++ax)
                div_theta_u += ph.u[ax].v[i] * ph.grad_theta[ax].v[i];
            const double cx = ph.grad_b[2][1].v[i] - ph.grad_b[1][2].v[i];
            const double cy = ph.grad_b[0][2].v[i] - ph.grad_b[2][0].v[i];
            const double cz = ph.grad_b[1][0].v[i] - ph.grad_b[0][1].v[i];
            const double curl2 = cx * cx + cy * cy + cz * cz;
            w.v[i] = -div_theta_u - p.kappa * Ia.v[i] * ph.lap_theta.v[i] +
                     p.sigma * curl2 * inv_rho.v[i] +
                     (1.0 - R) * (1.0 + ph.theta.v[i]) * ph.div_u.v[i];
        }
        out.f3 = spectral_dealiased(w);
    }

    // f4 = -u.grad b + b.grad u - b div u
    {
        out.f4 = VectorField(g);
        for (int c = 0; c < 3; ++c) {
            RealField w(g);
            for (long i = 0; i < n; ++i) {
                double u_gb = 0.0, b_gu = 0.0;
                for (int ax = 0; ax < 3; ++ax) {
                    u_gb += ph.u[ax].v[i] * ph.grad_b[c][ax].v[i];
                    b_gu += ph.b[ax].v[i] * ph.grad_u[c][ax].v[i];
                }
                w.v[i] = -u_gb + b_gu - ph.b[c].v[i] * ph.div_u.v[i];
            }
            out.f4[c] = spectral_dealiased(w);
        }
    }

    return out;
}

namespace {

/// Assemble the linear part of the tendency (optionally without the stiff
/// diffusion, for the integrating-factor stepper).
void add_linear_terms(Tendency& t, const State& s, const Params& p,
                      bool include_diffusion) {
    const ScalarField div_u = divergence(s.u);
    t.da -= div_u;

    // du += -R grad a - R grad theta + n.grad b - grad(n.b)
    const VectorField ga = gradient(s.a);
    const VectorField gth = gradient(s.theta);
    const VectorField ndb = directional_derivative(s.b, p.n);
    ScalarField nb(s.grid());
    for (int ax = 0; ax < 3; ++ax) nb.axpy(p.n[ax], s.b[ax]);
    const VectorField gnb = gradient(nb);
    for (int c = 0; c < 3; ++c) {
        t.du[c].axpy(-p.R, ga[c]);
        t.du[c].axpy(-p.R, gth[c]);
        t.du[c] += ndb[c];
        t.du[c] -= gnb[c];
    }

    // dtheta += kappa lap theta - div u
    if (include_diffusion && p.kappa != 0.0) t.dtheta.axpy(p.kappa, laplacian(s.theta));
    t.dtheta -= div_u;

    // db += sigma lap b + n.grad u - n div u
    const VectorField ndu = directional_derivative(s.u, p.n);
    for (int c = 0; c < 3; ++c) {
        if (include_diffusion && p.sigma != 0.0) t.db[c].axpy(p.sigma, laplacian(s.b[c]));
        t.db[c] += ndu[c];
        t.db[c].axpy(-p.n[c], div_u);
    }
}

Tendency empty_tendency(const GridPtr& g) {
    Tendency t;
    t.da = ScalarField(g);
    t.du = VectorField(g);
    t.dtheta = ScalarField(g);
    t.db = VectorField(g);
    t.nl.f1 = ScalarField(g);
    t.nl.f2 = VectorField(g);
    t.nl.f3 = ScalarField(g);
    t.nl.f4 = VectorField(g);
    return t;
}

} // namespace

Tendency rhs(const State& s, const Params& p) {
    Tendency t = empty_tendency(s.grid());
    t.nl = nonlinear_terms(s, p);
    t.da += t.nl.f1;
    t.du += t.nl.f2;
    t.dtheta += t.nl.f3;
    t.db += t.nl.f4;
    add_linear_terms(t, s, p, true);
    return t;
}

Tendency rhs_linear(const State& s, const Params& p) {
    Tendency t = empty_tendency(s.grid());
    add_linear_terms(t, s, p, true);
    return t;
}

ScalarField theta_rhs_variable_coeff(const State& s, const Params& p) {
    const GridPtr& g = s.grid();
    const long n = g->size();
    const RealField a = to_physical(s.a);
    require_no_vacuum(a);
    const RealField theta = to_physical(s.theta);
    const RealField div_u = to_physical(divergence(s.u));
    std::array<RealField, 3> u = to_physical(s.u);
    std::array<RealField, 3> grad_theta, grad_a;
    for (int ax = 0; ax < 3; ++ax) {
        grad_theta[ax] = to_physical(derivative(s.theta, ax));
        grad_a[ax] = to_physical(derivative(s.a, ax));
    }
    std::array<std::array<RealField, 3>, 3> grad_b;
    for (int c = 0; c < 3; ++c)
        for (int ax = 0; ax < 3; ++ax) grad_b[c][ax] = to_physical(derivative(s.b[c], ax));

    // div(kbar(rho) grad theta), kbar = kappa/(1+a)
    VectorField flux(g);
    for (int ax = 0; ax < 3; ++ax) {
        RealField w(g);
        for (long i = 0; i < n; ++i)
            w.v[i] = p.kappa / (1.0 + a.v[i]) * grad_theta[ax].v[i];
        flux[ax] = spectral_dealiased(w);
    }
    ScalarField out = divergence(flux);

    // F3 = -div(theta u) + kappa grad I(a).grad theta + sigma|curl b|^2/(1+a)
    //      + (1-R)(1+theta) div u,   grad I(a) = grad a/(1+a)^2
    // (the + sign on the grad I term is forced by div(kbar grad theta)
    //  = kappa lap theta/(1+a) - kappa grad I . grad theta)
    RealField w(g);
    for (long i = 0; i < n; ++i) {
        const double rho = 1.0 + a.v[i];
        double div_theta_u = theta.v[i] * div_u.v[i];
        double gI_gth = 0.0;
        for (int ax = 0; ax < 3; ++ax) {
            div_theta_u += u[ax].v[i] * grad_theta[ax].v[i];
            gI_gth += grad_a[ax].v[i] / (rho * rho) * grad_theta[ax].v[i];
        }
        const double cx = grad_b[2][1].v[i] - grad_b[1][2].v[i];
        const double cy = grad_b[0][2].v[i] - grad_b[2][0].v[i];
        const double cz = grad_b[1][0].v[i] - grad_b[0][1].v[i];
        w.v[i] = -div_theta_u + p.kappa * gI_gth +
                 p.sigma * (cx * cx + cy * cy + cz * cz) / rho +
                 (1.0 - p.R) * (1.0 + theta.v[i]) * div_u.v[i];
    }
    out += spectral_dealiased(w);
    out -= divergence(s.u);
    return out;
}

PrimitiveTendency primitive_rhs(const PrimitiveState& ps, const Params& p) {
    const GridPtr& g = ps.rho.grid();
    const long n = g->size();

    const RealField rho = to_physical(ps.rho);
    const RealField vt = to_physical(ps.vartheta);
    if (rho.min() <= kVacuumFloor)
        throw VacuumError("primitive density floor violated: min rho = " +
                          std::to_string(rho.min()));
    if (vt.min() <= kVacuumFloor)
        throw VacuumError("primitive temperature floor violated: min vartheta = " +
                          std::to_string(vt.min()));

    std::array<RealField, 3> u = to_physical(ps.u);
    std::array<RealField, 3> h = to_physical(ps.h);
    const RealField div_u = to_physical(divergence(ps.u));
    const RealField lap_vt = to_physical(laplacian(ps.vartheta));
    std::array<RealField, 3> grad_rho, grad_vt;
    for (int ax = 0; ax < 3; ++ax) {
        grad_rho[ax] = to_physical(derivative(ps.rho, ax));
        grad_vt[ax] = to_physical(derivative(ps.vartheta, ax));
    }
    std::array<std::array<RealField, 3>, 3> grad_u, grad_h;
    for (int c = 0; c < 3; ++c)
        for (int ax = 0; ax < 3; ++ax) {
            grad_u[c][ax] = to_physical(derivative(ps.u[c], ax));
            grad_h[c][ax] = to_physical(derivative(ps.h[c], ax));
        }

    PrimitiveTendency t{ScalarField(g), VectorField(g), ScalarField(g), VectorField(g)};

    // rho_t = -div(rho u) = -grad rho.u - rho div u
    {
        RealField w(g);
        for (long i = 0; i < n; ++i) {
            double adv = 0.0;
            for (int ax = 0; ax < 3; ++ax) adv += u[ax].v[i] * grad_rho[ax].v[i];
            w.v[i] = -adv - rho.v[i] * div_u.v[i];
        }
        t.drho = spectral_dealiased(w);
    }

    // P = R rho vartheta; need grad P exactly as a spectral derivative of the
    // (dealiased) pointwise product.
    std::array<RealField, 3> grad_P;
    {
        RealField P(g);
        for (long i = 0; i < n; ++i) P.v[i] = p.R * rho.v[i] * vt.v[i];
        ScalarField Ps = spectral_dealiased(P);
        for (int ax = 0; ax < 3; ++ax) grad_P[ax] = to_physical(derivative(Ps, ax));
    }

    // u_t = -u.grad u - grad P/rho + [(curl h) x h]/rho
    {
        RealField chx(g), chy(g), chz(g);
        for (long i = 0; i < n; ++i) {
            chx.v[i] = grad_h[2][1].v[i] - grad_h[1][2].v[i];
            chy.v[i] = grad_h[0][2].v[i] - grad_h[2][0].v[i];
            chz.v[i] = grad_h[1][0].v[i] - grad_h[0][1].v[i];
        }
        for (int c = 0; c < 3; ++c) {
            RealField w(g);
            for (long i = 0; i < n; ++i) {
                double adv = 0.0;
                for (int ax = 0; ax < 3; ++ax) adv += u[ax].v[i] * grad_u[c][ax].v[i];
                const double ch[3] = {chx.v[i], chy.v[i], chz.v[i]};
                const double hv[3] = {h[0].v[i], h[1].v[i], h[2].v[i]};
                const double lorentz = ch[(c + 1) % 3] * hv[(c + 2) % 3] -
                                       ch[(c + 2) % 3] * hv[(c + 1) % 3];
                w.v[i] = -adv + (-grad_P[c].v[i] + lorentz) / rho.v[i];
            }
            t.du[c] = spectral_dealiased(w);
        }

        // vartheta_t = -u.grad vt + [kappa lap vt - P div u + sigma|curl h|^2]/rho
        RealField w(g);
        for (long i = 0; i < n; ++i) {
            double adv = 0.0;
            for (int ax = 0; ax < 3; ++ax) adv += u[ax].v[i] * grad_vt[ax].v[i];
            const double curl2 = chx.v[i] * chx.v[i] + chy.v[i] * chy.v[i] +
                                 chz.v[i] * chz.v[i];
            const double Ploc = p.R * rho.v[i] * vt.v[i];
            w.v[i] = -adv + (p.kappa * lap_vt.v[i] - Ploc * div_u.v[i] +
                             p.sigma * curl2) /
                            rho.v[i];
        }
        t.dvartheta = spectral_dealiased(w);
    }

    // h_t = sigma lap h - u.grad h + h.grad u - h div u
    for (int c = 0; c < 3; ++c) {
        RealField w(g);
        for (long i = 0; i < n; ++i) {
            double u_gh = 0.0, h_gu = 0.0;
            for (int ax = 0; ax < 3; ++ax) {
                u_gh += u[ax].v[i] * grad_h[c][ax].v[i];
                h_gu += h[ax].v[i] * grad_u[c][ax].v[i];
            }
            w.v[i] = -u_gh + h_gu - h[c].v[i] * div_u.v[i];
        }
        t.dh[c] = spectral_dealiased(w);
        if (p.sigma != 0.0) t.dh[c].axpy(p.sigma, laplacian(ps.h[c]));
    }

    return t;
}

PrimitiveState to_primitive(const State& s, const Params& p) {
    PrimitiveState ps(s.grid());
    ps.rho = s.a;
    ps.rho[0] += 1.0;
    ps.vartheta = s.theta;
    ps.vartheta[0] += 1.0;
    ps.u = s.u;
    ps.h = s.b;
    for (int c = 0; c < 3; ++c) ps.h[c][0] += p.n[c];
    return ps;
}

State from_primitive(const PrimitiveState& ps, const Params& p) {
    State s(ps.rho.grid());
    s.a = ps.rho;
    s.a[0] -= 1.0;
    s.theta = ps.vartheta;
    s.theta[0] -= 1.0;
    s.u = ps.u;
    s.b = ps.h;
    for (int c = 0; c < 3; ++c) s.b[c][0] -= p.n[c];
    return s;
}

State enforce_constraints(const State& s, ConstraintReport* report) {
    State out = s;
    ConstraintReport rep;

    rep.a_mean = std::abs(out.a.mean_mode());
    out.a[0] = cplx(0.0);

    double bm2 = 0.0;
    for (int c = 0; c < 3; ++c) {
        bm2 += std::norm(out.b[c].mean_mode());
        out.b[c][0] = cplx(0.0);
    }
    rep.b_mean = std::sqrt(bm2);

    const VectorField projected = leray_project(out.b);
    VectorField diff = out.b - projected;
    rep.leray_change = sobolev_norm(diff, 0.0);
    out.b = projected;

    double ny2 = 0.0;
    double r = zero_nyquist(out.a);
    ny2 += r * r;
    r = zero_nyquist(out.u);
    ny2 += r * r;
    r = zero_nyquist(out.theta);
    ny2 += r * r;
    r = zero_nyquist(out.b);
    ny2 += r * r;
    rep.nyquist_change = std::sqrt(ny2);

    if (report) *report = rep;
    return out;
}

} // namespace mhdstab
