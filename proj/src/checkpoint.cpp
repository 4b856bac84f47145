#include "mhdstab/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace mhdstab {

namespace {

constexpr char kMagic[4] = {'M', 'H', 'D', 'S'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
    // the format is little-endian by contract; this writes native order,
    // which is little-endian on every supported target
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}
double read_f64(std::istream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

/// Visit the lattice in lexicographic frequency order k1, k2, k3 each from
/// -M/2+1 to M/2, calling fn with the storage index.
template <typename F>
void for_each_lex(const Grid& g, F&& fn) {
    const int m = g.m();
    for (int f1 = -m / 2 + 1; f1 <= m / 2; ++f1)
        for (int f2 = -m / 2 + 1; f2 <= m / 2; ++f2)
            for (int f3 = -m / 2 + 1; f3 <= m / 2; ++f3)
                fn(g.index(g.index_of_freq(f1), g.index_of_freq(f2), g.index_of_freq(f3)));
}

void write_field(std::ostream& out, const ScalarField& f) {
    for_each_lex(*f.grid(), [&](long idx) {
        write_f64(out, f[idx].real());
        write_f64(out, f[idx].imag());
    });
}

void read_field(std::istream& in, ScalarField& f) {
    for_each_lex(*f.grid(), [&](long idx) {
        const double re = read_f64(in);
        const double im = read_f64(in);
        f[idx] = cplx(re, im);
    });
}

} // namespace

void save_checkpoint(const std::string& path, const State& s, const Params& p,
                     double t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open checkpoint for writing: " + path);
    out.write(kMagic, 4);
    write_u32(out, kVersion);
    write_u32(out, static_cast<std::uint32_t>(s.grid()->m()));
    write_f64(out, p.R);
    write_f64(out, p.kappa);
    write_f64(out, p.sigma);
    write_f64(out, p.c_nu);
    for (int c = 0; c < 3; ++c) write_f64(out, p.n[c]);
    write_f64(out, t);

    write_field(out, s.a);
    for (int c = 0; c < 3; ++c) write_field(out, s.u[c]);
    write_field(out, s.theta);
    for (int c = 0; c < 3; ++c) write_field(out, s.b[c]);
    if (!out) throw Error("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open checkpoint: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw Error("bad checkpoint magic in " + path);
    const std::uint32_t version = read_u32(in);
    if (version != kVersion)
        throw Error("unsupported checkpoint version " + std::to_string(version));
    const std::uint32_t m = read_u32(in);
    if (m < 8 || m % 2 != 0) throw Error("corrupt checkpoint: bad grid size");

    Checkpoint cp{Params{}, 0.0, State(Grid::create(static_cast<int>(m)))};
    cp.params.R = read_f64(in);
    cp.params.kappa = read_f64(in);
    cp.params.sigma = read_f64(in);
    cp.params.c_nu = read_f64(in);
    for (int c = 0; c < 3; ++c) cp.params.n[c] = read_f64(in);
    cp.t = read_f64(in);

    read_field(in, cp.state.a);
    for (int c = 0; c < 3; ++c) read_field(in, cp.state.u[c]);
    read_field(in, cp.state.theta);
    for (int c = 0; c < 3; ++c) read_field(in, cp.state.b[c]);
    if (!in) throw Error("checkpoint truncated: " + path);
    return cp;
}

} // namespace mhdstab
