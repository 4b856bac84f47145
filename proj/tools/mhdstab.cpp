#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "mhdstab/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;
constexpr int kExitNumerical = 4;

int cmd_run(const std::string& cfg_path) {
    const mhdstab::RunConfig cfg = mhdstab::RunConfig::load(cfg_path);
    const mhdstab::RunArtifacts art = mhdstab::execute_run(cfg);
    if (art.series.empty()) std::cout << "warning: empty series (t_end = 0?)\n";
    std::cout << "run: t=" << art.status.t << " steps=" << art.status.steps
              << (art.status.blew_up ? " BLOW-UP: " + art.status.reason : " completed")
              << "\n";
    std::cout << "  c_est=" << art.certificate.c_est
              << "  fitted slope=" << art.checks.fitted_slope
              << " (theorem exponent " << art.checks.theorem_exponent << ")\n";
    return art.status.blew_up ? kExitBlowup : kExitOk;
}

int cmd_dio(const std::vector<double>& nvals, double r, int K) {
    if (nvals.size() != 3)
        throw mhdstab::ConfigError("--n requires three comma-separated components");
    const mhdstab::BackgroundField bg =
        mhdstab::scan_constant({nvals[0], nvals[1], nvals[2]}, r, K);
    std::cout << mhdstab::certificate_json(bg) << '\n';
    return kExitOk;
}

int cmd_linear(const std::string& cfg_path, const std::vector<int>& mode) {
    const mhdstab::RunConfig cfg = mhdstab::RunConfig::load(cfg_path);
    if (!mode.empty()) {
        if (mode.size() != 3)
            throw mhdstab::ConfigError("--mode requires three integers");
        const std::array<int, 3> k{mode[0], mode[1], mode[2]};
        const auto ev = mhdstab::spectrum(mhdstab::mode_matrix(k, cfg.params));
        std::printf("eigenvalues at k = (%d,%d,%d):\n", k[0], k[1], k[2]);
        for (const auto& z : ev) std::printf("  %+.12e %+.12e i\n", z.real(), z.imag());
        return kExitOk;
    }
    const mhdstab::LinearArtifacts art = mhdstab::execute_linear(cfg);
    std::cout << "abscissa scan K=" << cfg.dio_K << ": global max = "
              << art.scan.global << " at k = (" << art.scan.argmax[0] << ','
              << art.scan.argmax[1] << ',' << art.scan.argmax[2] << ")\n";
    return kExitOk;
}

int cmd_compare(const std::string& cfg_path) {
    const mhdstab::RunConfig cfg = mhdstab::RunConfig::load(cfg_path);
    const mhdstab::CompareArtifacts art = mhdstab::execute_compare(cfg);
    std::cout << "branch a: grad_u_inf " << art.a.initial << " -> peak " << art.a.peak
              << (art.a.status.blew_up ? " (blow-up detected, expected for n=0)" : "")
              << "\n";
    std::cout << "branch b: grad_u_inf " << art.b.initial << " -> final " << art.b.final
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral simulator and verification suite for the 3D "
                 "inviscid non-isentropic compressible MHD perturbation system"};
    app.require_subcommand(1);

    std::string run_cfg, linear_cfg, compare_cfg;
    std::vector<double> dio_n;
    double dio_r = 2.5;
    int dio_K = 16;
    std::vector<int> linear_mode;

    auto* run = app.add_subcommand("run", "integrate a configured scenario");
    run->add_option("config", run_cfg, "config file")->required();

    auto* dio = app.add_subcommand("dio", "certify a background field");
    dio->add_option("--n", dio_n, "background field components a,b,c")
        ->required()
        ->delimiter(',');
    dio->add_option("--r", dio_r, "Diophantine exponent (> 2)");
    dio->add_option("--K", dio_K, "lattice truncation");

    auto* lin = app.add_subcommand("linear", "per-mode linear analysis");
    lin->add_option("config", linear_cfg, "config file")->required();
    lin->add_option("--mode", linear_mode, "print the spectrum of one mode k1,k2,k3")
        ->delimiter(',');

    auto* cmp = app.add_subcommand("compare", "two-branch stabilization contrast");
    cmp->add_option("config", compare_cfg, "config file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_cfg);
        if (dio->parsed()) return cmd_dio(dio_n, dio_r, dio_K);
        if (lin->parsed()) return cmd_linear(linear_cfg, linear_mode);
        if (cmp->parsed()) return cmd_compare(compare_cfg);
    } catch (const mhdstab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const mhdstab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
