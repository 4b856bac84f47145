#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mhdstab/diagnostics.hpp"
#include "mhdstab/timestepper.hpp"

namespace mhdstab {

/// Flat key-value config file: one `dotted.path = value` per line, values are
/// numbers, [a, b, c] arrays, "strings" or bare words; '#' starts a comment.
class KeyValueFile {
  public:
    static KeyValueFile parse_file(const std::string& path);
    static KeyValueFile parse_string(const std::string& text);

    bool has(const std::string& key) const;
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double fallback) const;
    long get_integer(const std::string& key) const;
    long get_integer(const std::string& key, long fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    Vec3 get_vec3(const std::string& key) const;

    const std::map<std::string, std::string>& raw() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

struct RunConfig {
    int grid_m = 32;
    Params params;                   // params.R, params.kappa, params.sigma, params.n
    std::optional<Params> params_b;  // second branch for `compare`
    double dio_r = 2.5;
    int dio_K = 16;
    std::string ic_kind;
    double ic_amplitude = 1e-2;
    std::uint64_t ic_seed = 1;
    double t_end = 1.0;
    double dt_max = 1e-2;
    double cfl = 0.4;
    int sample_stride = 10;
    int constraint_interval = 1;
    double functional_big_n = 0.0; // 0: default 4r+7
    double functional_beta = 0.0;  // 0: default r+4
    double functional_gamma = 0.0; // 0: default 32(1+|n|^2)
    std::string output_dir;
    int checkpoint_stride = 0;

    /// Parse and validate; throws ConfigError naming the offending field.
    static RunConfig load(const std::string& path);
    static RunConfig from_kv(const KeyValueFile& kv);

    StepperConfig stepper() const;
    FunctionalConfig functional(const Params& p) const;
    void validate() const;
};

} // namespace mhdstab
