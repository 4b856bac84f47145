#include "mhdstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mhdstab {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct PlotBox {
    double x0 = 70, y0 = 30, w = 560, h = 400;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void svg_header(std::ostream& out, int w, int h) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
        << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_polyline(std::ostream& out, const std::vector<std::pair<double, double>>& pts,
                  const PlotBox& box, const std::string& color) {
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) out << box.px(x) << ',' << box.py(y) << ' ';
    out << "\"/>\n";
}

void svg_axes(std::ostream& out, const PlotBox& box, const std::string& xlabel,
              const std::string& ylabel) {
    out << "<rect x=\"" << box.x0 << "\" y=\"" << box.y0 << "\" width=\"" << box.w
        << "\" height=\"" << box.h
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << box.x0 + box.w / 2 << "\" y=\"" << box.y0 + box.h + 35
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    out << "<text x=\"18\" y=\"" << box.y0 + box.h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << box.y0 + box.h / 2 << ")\">" << ylabel << "</text>\n";
    // a few ticks
    for (int i = 0; i <= 4; ++i) {
        const double fx = box.xmin + (box.xmax - box.xmin) * i / 4.0;
        const double fy = box.ymin + (box.ymax - box.ymin) * i / 4.0;
        char tx[32], ty[32];
        std::snprintf(tx, sizeof(tx), "%.3g", fx);
        std::snprintf(ty, sizeof(ty), "%.3g", fy);
        out << "<text x=\"" << box.px(fx) << "\" y=\"" << box.y0 + box.h + 16
            << "\" text-anchor=\"middle\" font-size=\"11\">" << tx << "</text>\n";
        out << "<text x=\"" << box.x0 - 6 << "\" y=\"" << box.py(fy) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << ty << "</text>\n";
    }
}

} // namespace

void write_series_csv(const std::string& path,
                      const std::vector<DiagnosticsRecord>& series) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);
    out << "t,l2_a,l2_u,l2_theta,l2_b,h_r4,E,D,Y_inf,mass_pert,mom1,mom2,mom3,"
           "total_energy,divb_max,min_density,balance_residual,poincare_margin\n";
    for (const auto& r : series) {
        out << fmt17(r.t) << ',' << fmt17(r.l2_a) << ',' << fmt17(r.l2_u) << ','
            << fmt17(r.l2_theta) << ',' << fmt17(r.l2_b) << ',' << fmt17(r.h_r4) << ','
            << fmt17(r.E) << ',' << fmt17(r.D) << ',' << fmt17(r.y_inf) << ','
            << fmt17(r.mass_pert) << ',' << fmt17(r.momentum[0]) << ','
            << fmt17(r.momentum[1]) << ',' << fmt17(r.momentum[2]) << ','
            << fmt17(r.total_energy) << ',' << fmt17(r.divb_max) << ','
            << fmt17(r.min_density) << ',' << fmt17(r.balance_residual) << ','
            << fmt17(r.poincare_margin) << '\n';
    }
    if (!out) throw Error("write failed: " + path);
}

void write_decay_svg(const std::string& path,
                     const std::vector<DiagnosticsRecord>& series,
                     double reference_slope) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);

    std::vector<std::pair<double, double>> hs, es;
    for (const auto& r : series) {
        if (r.h_r4 > 0.0) hs.emplace_back(std::log10(1.0 + r.t), std::log10(r.h_r4));
        if (r.E > 0.0) es.emplace_back(std::log10(1.0 + r.t), std::log10(r.E));
    }

    PlotBox box;
    box.xmin = 0.0;
    box.xmax = 0.1;
    box.ymin = 1e300;
    box.ymax = -1e300;
    for (const auto& v : {hs, es})
        for (const auto& [x, y] : v) {
            box.xmax = std::max(box.xmax, x);
            box.ymin = std::min(box.ymin, y);
            box.ymax = std::max(box.ymax, y);
        }
    if (hs.empty() && es.empty()) {
        box.ymin = -1;
        box.ymax = 1;
    }
    const double pad = 0.05 * (box.ymax - box.ymin + 1e-12);
    box.ymin -= pad;
    box.ymax += pad;

    svg_header(out, 700, 500);
    svg_axes(out, box, "log10(1+t)", "log10(value)");
    if (!hs.empty()) svg_polyline(out, hs, box, "#1f77b4");
    if (!es.empty()) svg_polyline(out, es, box, "#d62728");

    // reference power law through the first h_r4 sample
    if (!hs.empty()) {
        std::vector<std::pair<double, double>> ref;
        const double y0 = hs.front().second;
        ref.emplace_back(box.xmin, y0);
        ref.emplace_back(box.xmax, y0 + reference_slope * (box.xmax - box.xmin));
        svg_polyline(out, ref, box, "#7f7f7f");
        out << "<text x=\"" << box.x0 + box.w - 10 << "\" y=\"" << box.y0 + 16
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#7f7f7f\">reference slope "
            << reference_slope << "</text>\n";
    }
    out << "<text x=\"" << box.x0 + 10 << "\" y=\"" << box.y0 + 16
        << "\" font-size=\"12\" fill=\"#1f77b4\">H^{r+4} norm</text>\n";
    out << "<text x=\"" << box.x0 + 10 << "\" y=\"" << box.y0 + 32
        << "\" font-size=\"12\" fill=\"#d62728\">E(t)</text>\n";
    out << "</svg>\n";
}

void write_abscissa_svg(const std::string& path,
                        const std::vector<HeatmapSlice>& slices) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);

    double vmax = 1e-300;
    for (const auto& s : slices)
        for (const auto& row : s.value)
            for (double v : row) vmax = std::max(vmax, std::abs(v));

    const int cell = 10;
    const int panel_gap = 40;
    const int K = slices.empty() ? 0 : slices.front().K;
    const int side = (2 * K + 1) * cell;
    const int W = static_cast<int>(slices.size()) * (side + panel_gap) + panel_gap;
    const int H = side + 80;
    svg_header(out, W, H);

    int xoff = panel_gap;
    for (const auto& s : slices) {
        out << "<text x=\"" << xoff + side / 2 << "\" y=\"20\" text-anchor=\"middle\" "
            << "font-size=\"13\">k3 = " << s.k3 << "</text>\n";
        for (int i = 0; i <= 2 * K; ++i)
            for (int j = 0; j <= 2 * K; ++j) {
                const double v = s.value[i][j];
                // blue = damped, white = neutral, red = growing
                const double x = std::max(-1.0, std::min(1.0, v / vmax));
                int rr, gg, bb;
                if (x <= 0) {
                    const double f = std::pow(-x, 0.25); // emphasize small magnitudes
                    rr = static_cast<int>(255 * (1 - f));
                    gg = static_cast<int>(255 * (1 - f));
                    bb = 255;
                } else {
                    const double f = std::pow(x, 0.25);
                    rr = 255;
                    gg = static_cast<int>(255 * (1 - f));
                    bb = static_cast<int>(255 * (1 - f));
                }
                out << "<rect x=\"" << xoff + i * cell << "\" y=\""
                    << 30 + (2 * K - j) * cell << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\"rgb(" << rr << ',' << gg
                    << ',' << bb << ")\"/>\n";
            }
        out << "<text x=\"" << xoff + side / 2 << "\" y=\"" << 30 + side + 24
            << "\" text-anchor=\"middle\" font-size=\"11\">k1 = -" << K << ".." << K
            << ", k2 = -" << K << ".." << K << "</text>\n";
        xoff += side + panel_gap;
    }
    out << "</svg>\n";
}

void write_compare_svg(const std::string& path,
                       const std::vector<std::pair<double, double>>& branch_a,
                       const std::vector<std::pair<double, double>>& branch_b,
                       const std::string& label_a, const std::string& label_b) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open for writing: " + path);

    PlotBox box;
    box.xmin = 0;
    box.xmax = 1e-12;
    box.ymin = 0;
    box.ymax = 1e-12;
    for (const auto* v : {&branch_a, &branch_b})
        for (const auto& [x, y] : *v) {
            box.xmax = std::max(box.xmax, x);
            box.ymax = std::max(box.ymax, y);
        }
    box.ymax *= 1.05;

    svg_header(out, 700, 500);
    svg_axes(out, box, "t", "|grad u|_inf");
    if (!branch_a.empty()) svg_polyline(out, branch_a, box, "#d62728");
    if (!branch_b.empty()) svg_polyline(out, branch_b, box, "#1f77b4");
    out << "<text x=\"" << box.x0 + 10 << "\" y=\"" << box.y0 + 16
        << "\" font-size=\"12\" fill=\"#d62728\">" << label_a << "</text>\n";
    out << "<text x=\"" << box.x0 + 10 << "\" y=\"" << box.y0 + 32
        << "\" font-size=\"12\" fill=\"#1f77b4\">" << label_b << "</text>\n";
    out << "</svg>\n";
}

} // namespace mhdstab
