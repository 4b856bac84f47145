#include "mhdstab/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mhdstab {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

KeyValueFile KeyValueFile::parse_string(const std::string& text) {
    KeyValueFile kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside quotes
        std::string clean;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            if (c == '#' && !quoted) break;
            clean.push_back(c);
        }
        clean = trim(clean);
        if (clean.empty()) continue;
        const size_t eq = clean.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(clean.substr(0, eq));
        const std::string val = trim(clean.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key or value");
        kv.kv_[key] = val;
    }
    return kv;
}

bool KeyValueFile::has(const std::string& key) const { return kv_.count(key) > 0; }

double KeyValueFile::get_number(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config field: " + key);
    try {
        size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config field " + key + ": not a number: " + it->second);
    }
}

double KeyValueFile::get_number(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

long KeyValueFile::get_integer(const std::string& key) const {
    const double v = get_number(key);
    if (v != std::floor(v))
        throw ConfigError("config field " + key + ": expected an integer");
    return static_cast<long>(v);
}

long KeyValueFile::get_integer(const std::string& key, long fallback) const {
    return has(key) ? get_integer(key) : fallback;
}

std::string KeyValueFile::get_string(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config field: " + key);
    std::string v = it->second;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        v = v.substr(1, v.size() - 2);
    return v;
}

std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

Vec3 KeyValueFile::get_vec3(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing config field: " + key);
    std::string v = it->second;
    if (v.size() >= 2 && v.front() == '[' && v.back() == ']')
        v = v.substr(1, v.size() - 2);
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream ss(v);
    Vec3 out;
    if (!(ss >> out[0] >> out[1] >> out[2]))
        throw ConfigError("config field " + key + ": expected three numbers");
    double extra;
    if (ss >> extra) throw ConfigError("config field " + key + ": expected exactly three numbers");
    return out;
}

RunConfig RunConfig::load(const std::string& path) {
    return from_kv(KeyValueFile::parse_file(path));
}

namespace {

Params params_from(const KeyValueFile& kv, const std::string& prefix) {
    Params p;
    p.R = kv.get_number(prefix + ".R", 1.0);
    p.kappa = kv.get_number(prefix + ".kappa", 1.0);
    p.sigma = kv.get_number(prefix + ".sigma", 1.0);
    p.n = kv.get_vec3(prefix + ".n");
    return p;
}

} // namespace

RunConfig RunConfig::from_kv(const KeyValueFile& kv) {
    RunConfig c;
    c.grid_m = static_cast<int>(kv.get_integer("grid.m"));

    if (kv.has("params_a.n")) {
        c.params = params_from(kv, "params_a");
        c.params_b = params_from(kv, "params_b");
    } else {
        c.params = params_from(kv, "params");
    }

    c.dio_r = kv.get_number("dio.r", 2.5);
    c.dio_K = static_cast<int>(kv.get_integer("dio.K", 16));
    c.ic_kind = kv.get_string("ic.kind");
    c.ic_amplitude = kv.get_number("ic.amplitude", 1e-2);
    c.ic_seed = static_cast<std::uint64_t>(kv.get_integer("ic.seed", 1));
    c.t_end = kv.get_number("time.t_end");
    c.dt_max = kv.get_number("time.dt_max", 1e-2);
    c.cfl = kv.get_number("time.cfl", 0.4);
    c.sample_stride = static_cast<int>(kv.get_integer("time.sample_stride", 10));
    c.constraint_interval =
        static_cast<int>(kv.get_integer("time.constraint_interval", 1));
    c.functional_big_n = kv.get_number("functional.big_n", 0.0);
    c.functional_beta = kv.get_number("functional.beta", 0.0);
    c.functional_gamma = kv.get_number("functional.gamma", 0.0);
    c.output_dir = kv.get_string("output.dir", "");
    c.checkpoint_stride = static_cast<int>(kv.get_integer("output.checkpoint_stride", 0));
    c.validate();
    return c;
}

void RunConfig::validate() const {
    if (grid_m < 8 || grid_m % 2 != 0)
        throw ConfigError("grid.m must be even and >= 8");
    params.validate();
    if (params_b) params_b->validate();
    if (dio_r <= 2.0) throw ConfigError("dio.r must be > 2");
    if (dio_K < 1) throw ConfigError("dio.K must be >= 1");
    if (ic_kind.empty()) throw ConfigError("missing config field: ic.kind");
    if (ic_amplitude < 0.0) throw ConfigError("ic.amplitude must be >= 0");
    if (t_end < 0.0) throw ConfigError("time.t_end must be >= 0");
    stepper().validate();
    if (checkpoint_stride < 0) throw ConfigError("output.checkpoint_stride must be >= 0");
    functional(params).validate();
}

StepperConfig RunConfig::stepper() const {
    StepperConfig sc;
    sc.dt_max = dt_max;
    sc.cfl = cfl;
    sc.t_end = t_end;
    sc.constraint_interval = constraint_interval;
    sc.sample_stride = sample_stride;
    return sc;
}

FunctionalConfig RunConfig::functional(const Params& p) const {
    FunctionalConfig fc;
    fc.r = dio_r;
    fc.big_n = functional_big_n > 0.0 ? functional_big_n : 4.0 * dio_r + 7.0;
    fc.beta = functional_beta > 0.0 ? functional_beta : dio_r + 4.0;
    fc.gamma = functional_gamma > 0.0 ? functional_gamma : gamma_default(p.n);
    return fc;
}

} // namespace mhdstab
