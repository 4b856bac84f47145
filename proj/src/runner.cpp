#include "mhdstab/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mhdstab/checkpoint.hpp"
#include "mhdstab/report.hpp"
#include "mhdstab/scenarios.hpp"

namespace mhdstab {

using nlohmann::json;

namespace {

/// Subsample (t, value) points at targets geometric in (1+t), snapping to the
/// nearest recorded sample; deduplicated, order preserving.
std::vector<std::pair<double, double>> log_uniform_subsample(
    const std::vector<std::pair<double, double>>& series, int points) {
    if (series.size() <= 2) return series;
    const double l_end = std::log1p(series.back().first);
    std::vector<std::pair<double, double>> out;
    size_t last_idx = static_cast<size_t>(-1);
    for (int i = 0; i < points; ++i) {
        const double target = std::expm1(l_end * i / (points - 1));
        size_t best = 0;
        double bd = 1e300;
        for (size_t j = 0; j < series.size(); ++j) {
            const double d = std::abs(series[j].first - target);
            if (d < bd) {
                bd = d;
                best = j;
            }
        }
        if (best != last_idx) {
            out.push_back(series[best]);
            last_idx = best;
        }
    }
    return out;
}

} // namespace

SeriesChecks evaluate_series(const std::vector<DiagnosticsRecord>& series,
                             const FunctionalConfig& cfg) {
    SeriesChecks ch;
    ch.theorem_exponent = decay_exponent(cfg);
    if (series.empty()) return ch;

    const DiagnosticsRecord& first = series.front();
    const double h0 = first.h_r4;

    for (const auto& r : series) {
        const double rel_bal =
            std::abs(r.balance_residual) / (std::abs(r.balance_dissipation) + 1e-30);
        ch.balance_worst = std::max(ch.balance_worst, rel_bal);

        double drift = std::abs(r.mass_pert - first.mass_pert);
        for (int c = 0; c < 3; ++c) {
            drift = std::max(drift, std::abs(r.momentum[c] - first.momentum[c]));
            drift = std::max(drift, std::abs(r.b_mean[c] - first.b_mean[c]));
        }
        drift = std::max(drift, std::abs(r.total_energy - first.total_energy));
        ch.conservation_worst = std::max(ch.conservation_worst, drift);

        ch.divb_worst = std::max(ch.divb_worst, r.divb_max);
        ch.poincare_worst = std::max(ch.poincare_worst, r.poincare_margin);

        const double bound = 4.0 * h0 * std::pow(1.0 + r.t, -ch.theorem_exponent);
        ch.decay_bound_worst = std::max(ch.decay_bound_worst, r.h_r4 / bound);
    }
    ch.balance_ok = ch.balance_worst <= 1e-7;
    ch.conservation_ok = ch.conservation_worst <= 1e-8;
    ch.divb_ok = ch.divb_worst <= 1e-10;
    ch.poincare_ok = ch.poincare_worst <= 10.0;
    ch.decay_bound_ok = ch.decay_bound_worst <= 1.0;

    ch.e_monotone_worst = -std::numeric_limits<double>::infinity();
    ch.d_control_worst = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < series.size(); ++i) {
        const auto& r0 = series[i];
        const auto& r1 = series[i + 1];
        if (r0.t >= 0.1) {
            const double growth = r1.E / std::max(r0.E, 1e-300);
            ch.e_monotone_worst = std::max(ch.e_monotone_worst, growth);
        }
        const double dt = r1.t - r0.t;
        if (dt > 0.0) {
            const double dEdt = (r1.E - r0.E) / dt;
            ch.d_control_worst = std::max(ch.d_control_worst, dEdt + 0.01 * r0.D);
        }
    }
    ch.e_monotone_ok = ch.e_monotone_worst <= 1.0 + 1e-9;
    ch.d_control_ok = ch.d_control_worst <= 0.0;

    std::vector<std::pair<double, double>> hs;
    for (const auto& r : series) hs.emplace_back(r.t, r.h_r4);
    try {
        const DecayFit fit = decay_fit(log_uniform_subsample(hs, 33), 0.0);
        ch.fitted_slope = fit.slope;
        ch.fit_c_best = fit.c_best;
        ch.slope_ok = fit.slope <= -ch.theorem_exponent;
        ch.fitted_slope_uniform_t = decay_fit(hs, 0.0).slope;
    } catch (const Error&) {
        ch.slope_ok = false;
    }
    return ch;
}

namespace {

json checks_json(const SeriesChecks& ch) {
    return json{{"balance", {{"pass", ch.balance_ok}, {"worst_relative", ch.balance_worst}}},
                {"conservation",
                 {{"pass", ch.conservation_ok}, {"worst_drift", ch.conservation_worst}}},
                {"div_b", {{"pass", ch.divb_ok}, {"worst", ch.divb_worst}}},
                {"E_monotone",
                 {{"pass", ch.e_monotone_ok}, {"worst_growth_factor", ch.e_monotone_worst}}},
                {"D_control",
                 {{"pass", ch.d_control_ok}, {"worst_excess", ch.d_control_worst}}},
                {"decay_bound",
                 {{"pass", ch.decay_bound_ok}, {"worst_ratio", ch.decay_bound_worst}}},
                {"poincare", {{"pass", ch.poincare_ok}, {"worst_ratio", ch.poincare_worst}}},
                {"fitted_slope",
                 {{"pass", ch.slope_ok},
                  {"slope", ch.fitted_slope},
                  {"slope_uniform_in_t", ch.fitted_slope_uniform_t},
                  {"c_best", ch.fit_c_best},
                  {"theorem_exponent", ch.theorem_exponent}}}};
}

} // namespace

RunArtifacts execute_run(const RunConfig& cfg) {
    RunArtifacts art;
    const GridPtr grid = Grid::create(cfg.grid_m);
    const Params& p = cfg.params;

    art.certificate = scan_constant(p.n, cfg.dio_r, cfg.dio_K);
    art.functional = cfg.functional(p);
    art.functional.validate();

    // coupling-weight positivity self-check at configuration time
    art.gamma_margin = gamma_positivity_margin(art.functional, p, grid, 8, 2024);
    if (art.gamma_margin < 0.0)
        throw ConfigError("functional.gamma fails the positivity self-check");

    State raw = make_initial_condition(cfg.ic_kind, grid, cfg.ic_amplitude, cfg.ic_seed,
                                       cfg.dio_r + 4.0);
    State s0 = prepare_initial_data(raw, p);
    art.initial_h_r4 = s0.sobolev_norm(cfg.dio_r + 4.0);

    const StepperConfig sc = cfg.stepper();
    const bool want_output = !cfg.output_dir.empty();
    if (want_output) std::filesystem::create_directories(cfg.output_dir);

    long checkpoint_counter = 0;
    auto sink = [&](double t, long stepno, const State& s, const Tendency& tend) {
        art.series.push_back(sample_diagnostics(t, s, tend, p, art.functional));
        if (want_output && cfg.checkpoint_stride > 0 &&
            stepno % cfg.checkpoint_stride == 0) {
            save_checkpoint(cfg.output_dir + "/checkpoint_" +
                                std::to_string(checkpoint_counter++) + ".mhds",
                            s, p, t);
        }
    };

    const RunResult rr = run(s0, p, sc, sink);
    art.status = rr.status;
    art.checks = evaluate_series(art.series, art.functional);

    if (want_output) {
        write_series_csv(cfg.output_dir + "/series.csv", art.series);
        write_decay_svg(cfg.output_dir + "/decay.svg", art.series,
                        -art.checks.theorem_exponent);

        json j;
        j["grid_m"] = cfg.grid_m;
        j["params"] = {{"R", p.R}, {"kappa", p.kappa}, {"sigma", p.sigma},
                       {"n", {p.n[0], p.n[1], p.n[2]}}};
        j["certificate"] = {{"n", {p.n[0], p.n[1], p.n[2]}},
                            {"r", art.certificate.r},
                            {"K", art.certificate.K},
                            {"c_est", art.certificate.c_est},
                            {"k_min", {art.certificate.k_min[0], art.certificate.k_min[1],
                                       art.certificate.k_min[2]}}};
        j["functional"] = {{"big_n", art.functional.big_n},
                           {"beta", art.functional.beta},
                           {"r", art.functional.r},
                           {"gamma", art.functional.gamma},
                           {"gamma_positivity_margin", art.gamma_margin}};
        j["status"] = {{"completed", art.status.completed},
                       {"blew_up", art.status.blew_up},
                       {"reason", art.status.reason},
                       {"t", art.status.t},
                       {"steps", art.status.steps}};
        j["samples"] = art.series.size();
        if (art.series.empty()) j["empty_series"] = true;
        j["initial_h_r4"] = art.initial_h_r4;
        j["checks"] = checks_json(art.checks);

        // raw dissipation constituents for offline ratio inspection
        json dc = json::array();
        for (const auto& r : art.series)
            dc.push_back({{"t", r.t},
                          {"grad_a_hr3_sq", r.d_parts.grad_a_hr3},
                          {"div_u_hr3_sq", r.d_parts.div_u_hr3},
                          {"n_grad_u_hr3_sq", r.d_parts.n_grad_u_hr3}});
        j["d_constituents"] = dc;

        std::ofstream out(cfg.output_dir + "/summary.json");
        out << j.dump(2) << '\n';
    }
    return art;
}

namespace {

CompareBranch run_branch(const std::string& name, const RunConfig& cfg, const Params& p,
                         const State& s0) {
    CompareBranch br;
    br.name = name;

    StepperConfig sc = cfg.stepper();
    auto grad_u_linf = [](const State& s) {
        double mx = 0.0;
        for (int c = 0; c < 3; ++c)
            for (int ax = 0; ax < 3; ++ax)
                mx = std::max(mx, to_physical(derivative(s.u[c], ax)).linf());
        return mx;
    };

    auto sink = [&](double t, long, const State& s, const Tendency&) {
        br.grad_u_inf.emplace_back(t, grad_u_linf(s));
    };
    const RunResult rr = run(s0, p, sc, sink);
    br.status = rr.status;
    if (br.status.blew_up && (br.grad_u_inf.empty() ||
                              br.grad_u_inf.back().first < br.status.t)) {
        // record the terminal sample; the state may be inadmissible for the
        // full diagnostics but the gradient sup-norm is still defined
        br.grad_u_inf.emplace_back(br.status.t, grad_u_linf(rr.final_state));
    }

    br.initial = br.grad_u_inf.empty() ? 0.0 : br.grad_u_inf.front().second;
    for (const auto& [t, v] : br.grad_u_inf) br.peak = std::max(br.peak, v);
    br.final = br.grad_u_inf.empty() ? 0.0 : br.grad_u_inf.back().second;
    return br;
}

} // namespace

CompareArtifacts execute_compare(const RunConfig& cfg) {
    if (!cfg.params_b)
        throw ConfigError("compare requires params_a.* and params_b.* blocks");

    const GridPtr grid = Grid::create(cfg.grid_m);
    State raw = make_initial_condition(cfg.ic_kind, grid, cfg.ic_amplitude, cfg.ic_seed,
                                       cfg.dio_r + 4.0);

    CompareArtifacts art;
    art.a = run_branch("a", cfg, cfg.params, prepare_initial_data(raw, cfg.params));
    art.b = run_branch("b", cfg, *cfg.params_b, prepare_initial_data(raw, *cfg.params_b));

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream csv(cfg.output_dir + "/compare.csv");
        csv << "branch,t,grad_u_inf\n";
        char buf[64];
        for (const auto& [t, v] : art.a.grad_u_inf) {
            std::snprintf(buf, sizeof(buf), "a,%.17g,%.17g\n", t, v);
            csv << buf;
        }
        for (const auto& [t, v] : art.b.grad_u_inf) {
            std::snprintf(buf, sizeof(buf), "b,%.17g,%.17g\n", t, v);
            csv << buf;
        }
        write_compare_svg(cfg.output_dir + "/compare.svg", art.a.grad_u_inf,
                          art.b.grad_u_inf, "branch a", "branch b");

        json j;
        j["branch_a"] = {{"blew_up", art.a.status.blew_up},
                         {"reason", art.a.status.reason},
                         {"t_reached", art.a.status.t},
                         {"initial_grad_u_inf", art.a.initial},
                         {"peak_grad_u_inf", art.a.peak},
                         {"final_grad_u_inf", art.a.final},
                         {"growth_factor", art.a.peak / std::max(art.a.initial, 1e-300)}};
        j["branch_b"] = {{"blew_up", art.b.status.blew_up},
                         {"reason", art.b.status.reason},
                         {"t_reached", art.b.status.t},
                         {"initial_grad_u_inf", art.b.initial},
                         {"peak_grad_u_inf", art.b.peak},
                         {"final_grad_u_inf", art.b.final},
                         {"decay_factor", art.b.final / std::max(art.b.initial, 1e-300)}};
        std::ofstream out(cfg.output_dir + "/compare_summary.json");
        out << j.dump(2) << '\n';
    }
    return art;
}

LinearArtifacts execute_linear(const RunConfig& cfg) {
    LinearArtifacts art;
    art.scan = abscissa_scan(cfg.params, cfg.dio_K);

    if (!cfg.output_dir.empty()) {
        std::filesystem::create_directories(cfg.output_dir);
        std::ofstream csv(cfg.output_dir + "/spectrum.csv");
        csv << "k1,k2,k3,ndotk,abscissa";
        for (int i = 1; i <= 7; ++i) csv << ",re_lambda_" << i;
        for (int i = 1; i <= 7; ++i) csv << ",im_lambda_" << i;
        csv << '\n';
        char buf[64];
        for (const auto& e : art.scan.entries) {
            csv << e.k[0] << ',' << e.k[1] << ',' << e.k[2];
            std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", e.ndotk, e.abscissa);
            csv << buf;
            for (const auto& ev : e.eigenvalues) {
                std::snprintf(buf, sizeof(buf), ",%.17g", ev.real());
                csv << buf;
            }
            for (const auto& ev : e.eigenvalues) {
                std::snprintf(buf, sizeof(buf), ",%.17g", ev.imag());
                csv << buf;
            }
            csv << '\n';
        }

        // heat map slices k3 = 0 .. min(K,4)
        const int K = cfg.dio_K;
        std::vector<HeatmapSlice> slices;
        for (int k3 = 0; k3 <= std::min(K, 4); ++k3) {
            HeatmapSlice s;
            s.k3 = k3;
            s.K = K;
            s.value.assign(2 * K + 1, std::vector<double>(2 * K + 1, 0.0));
            slices.push_back(std::move(s));
        }
        for (const auto& e : art.scan.entries) {
            if (e.k[2] < 0 || e.k[2] > std::min(K, 4)) continue;
            slices[e.k[2]].value[e.k[0] + K][e.k[1] + K] = e.abscissa;
        }
        write_abscissa_svg(cfg.output_dir + "/abscissa.svg", slices);
    }
    return art;
}

std::string certificate_json(const BackgroundField& bg) {
    json j;
    j["n"] = {bg.n[0], bg.n[1], bg.n[2]};
    j["r"] = bg.r;
    j["K"] = bg.K;
    j["c_est"] = bg.c_est;
    j["k_min"] = {bg.k_min[0], bg.k_min[1], bg.k_min[2]};
    return j.dump(2);
}

} // namespace mhdstab
