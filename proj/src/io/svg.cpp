#include "wtfb/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wtfb/errors.hpp"

namespace wtfb::io {

namespace {

// fixed curve styles so figures are diffable
struct Curve {
    const char* name;
    const char* color;
    const char* dash; // empty = solid
};

constexpr Curve kCurves[] = {
    {"cb_s", "#1f77b4", ""},
    {"cb_in", "#ff7f0e", ""},
    {"cb_in_new", "#2ca02c", ""},
    {"cb_out", "#d62728", "6,3"},
};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

std::string sweep_to_svg(double p1, const std::vector<SweepRow>& rows, const RunManifest& manifest) {
    if (rows.empty()) throw validation_error("svg plot: empty sweep");

    constexpr double width = 800, height = 560;
    constexpr double ml = 70, mr = 30, mt = 50, mb = 55;
    const double plot_w = width - ml - mr, plot_h = height - mt - mb;

    double x_min = rows.front().p2, x_max = rows.back().p2;
    for (const auto& r : rows) {
        x_min = std::min(x_min, r.p2);
        x_max = std::max(x_max, r.p2);
    }
    if (x_max <= x_min) x_max = x_min + 1e-6;
    double y_max = 0.0;
    for (const auto& r : rows)
        y_max = std::max({y_max, r.cb_s, r.cb_in, r.cb_in_new, r.cb_out});
    y_max = std::max(y_max * 1.08, 1e-6);

    auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return mt + (1.0 - y / y_max) * plot_h; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<!--\n";
    for (const auto& line : manifest.comment_lines()) os << "  " << line << "\n";
    os << "-->\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\""
       << " font-size=\"16\">secrecy-rate bounds, p1 = " << fmt(p1) << "</text>\n";

    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w << "\" y2=\""
       << mt + plot_h << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + plot_h
       << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double xv = x_min + (x_max - x_min) * k / 5.0;
        const double yv = y_max * k / 5.0;
        os << "<line x1=\"" << fmt_coord(px(xv)) << "\" y1=\"" << mt + plot_h << "\" x2=\""
           << fmt_coord(px(xv)) << "\" y2=\"" << mt + plot_h + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt_coord(px(xv)) << "\" y=\"" << mt + plot_h + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt(std::round(xv * 1e4) / 1e4) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt_coord(py(yv)) << "\" x2=\"" << ml
           << "\" y2=\"" << fmt_coord(py(yv)) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 9 << "\" y=\"" << fmt_coord(py(yv) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt(std::round(yv * 1e4) / 1e4) << "</text>\n";
    }
    os << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">p2</text>\n";
    os << "<text x=\"18\" y=\"" << mt + plot_h / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
       << mt + plot_h / 2 << ")\">bits / channel use</text>\n";

    auto value_of = [](const SweepRow& r, int c) {
        switch (c) {
            case 0: return r.cb_s;
            case 1: return r.cb_in;
            case 2: return r.cb_in_new;
            default: return r.cb_out;
        }
    };
    for (int c = 0; c < 4; ++c) {
        os << "<polyline fill=\"none\" stroke=\"" << kCurves[c].color << "\" stroke-width=\"2\"";
        if (kCurves[c].dash[0]) os << " stroke-dasharray=\"" << kCurves[c].dash << "\"";
        os << " points=\"";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i) os << ' ';
            os << fmt_coord(px(rows[i].p2)) << ',' << fmt_coord(py(value_of(rows[i], c)));
        }
        os << "\"/>\n";
    }

    // legend
    const double lx = ml + 14, ly = mt + 12;
    for (int c = 0; c < 4; ++c) {
        const double y = ly + 18.0 * c;
        os << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 26 << "\" y2=\"" << y
           << "\" stroke=\"" << kCurves[c].color << "\" stroke-width=\"2\"";
        if (kCurves[c].dash[0]) os << " stroke-dasharray=\"" << kCurves[c].dash << "\"";
        os << "/>\n";
        os << "<text x=\"" << lx + 32 << "\" y=\"" << y + 4
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << kCurves[c].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace wtfb::io
