#include "linsep/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace linsep {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 72;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_px(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range data_range(const std::vector<Series>& series, bool use_y) {
    Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& s : series)
        for (double v : (use_y ? s.y : s.x)) {
            r.lo = std::min(r.lo, v);
            r.hi = std::max(r.hi, v);
        }
    if (r.lo == r.hi) {
        const double pad = r.lo == 0.0 ? 1.0 : std::abs(r.lo) * 0.1;
        r.lo -= pad;
        r.hi += pad;
    }
    return r;
}

/// Tick step of the form {1,2,5}*10^m giving roughly `target` intervals.
double nice_step(double range, int target) {
    const double raw = range / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double unit = raw / mag;
    double factor = 10.0;
    if (unit <= 1.0) factor = 1.0;
    else if (unit <= 2.0) factor = 2.0;
    else if (unit <= 5.0) factor = 5.0;
    return factor * mag;
}

std::vector<double> ticks(const Range& r, int target = 6) {
    const double step = nice_step(r.hi - r.lo, target);
    std::vector<double> out;
    double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + step * 1e-9; t += step) {
        // Snap values like 0.30000000000000004 back onto the grid.
        out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return out;
}

}  // namespace

void emit_svg_plot(const std::vector<Series>& series, const std::string& title,
                   const std::string& x_label, const std::string& y_label, const std::string& path) {
    if (series.empty()) throw std::invalid_argument("emit_svg_plot: no series");
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::invalid_argument("emit_svg_plot: series '" + s.name + "' is empty or ragged");
        for (double v : s.x)
            if (!std::isfinite(v))
                throw std::invalid_argument("emit_svg_plot: non-finite x in series '" + s.name + "'");
        for (double v : s.y)
            if (!std::isfinite(v))
                throw std::invalid_argument("emit_svg_plot: non-finite y in series '" + s.name + "'");
    }

    const Range xr = data_range(series, false);
    const Range yr = data_range(series, true);
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto py = [&](double y) { return kMarginTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">"
        << xml_escape(title) << "</text>\n";

    // Axes and grid.
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : ticks(xr)) {
        const double x = px(t);
        svg << "<line x1=\"" << fmt_px(x) << "\" y1=\"" << kMarginTop << "\" x2=\"" << fmt_px(x)
            << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << fmt_px(x) << "\" y=\"" << kMarginTop + plot_h + 16
            << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
    }
    for (double t : ticks(yr)) {
        const double y = py(t);
        svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << fmt_px(y) << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << fmt_px(y) << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << fmt_px(y + 4)
            << "\" text-anchor=\"end\">" << fmt(t) << "</text>\n";
    }
    svg << "</g>\n"
        << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // Axis labels.
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(x_label)
        << "</text>\n"
        << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 "
        << kMarginTop + plot_h / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

    // Data.
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt_px(px(series[s].x[i])) << ',' << fmt_px(py(series[s].y[i]));
        }
        svg << "\"/>\n";
    }

    // Legend.
    svg << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const double ly = kMarginTop + 10 + 18.0 * s;
        svg << "<line x1=\"" << kMarginLeft + plot_w - 150 << "\" y1=\"" << fmt_px(ly) << "\" x2=\""
            << kMarginLeft + plot_w - 126 << "\" y2=\"" << fmt_px(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << kMarginLeft + plot_w - 120 << "\" y=\"" << fmt_px(ly + 4) << "\">"
            << xml_escape(series[s].name) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_svg_plot: cannot open " + path);
    out << svg.str();
    if (!out) throw std::runtime_error("emit_svg_plot: write failure on " + path);
}

}  // namespace linsep
