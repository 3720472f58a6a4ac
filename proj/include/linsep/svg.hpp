#pragma once

#include <string>
#include <vector>

namespace linsep {

/// A named polyline. x and y must have equal nonzero length and finite values.
struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Renders a standalone SVG line chart: one polyline per series, legend,
/// linear axes with computed ticks. Output bytes are deterministic for
/// identical input. Throws on empty or non-finite series before writing.
void emit_svg_plot(const std::vector<Series>& series, const std::string& title,
                   const std::string& x_label, const std::string& y_label, const std::string& path);

}  // namespace linsep
