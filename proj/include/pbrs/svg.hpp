#pragma once

#include <string>
#include <vector>

#include "pbrs/curve.hpp"

namespace pbrs {

struct SvgSeries {
    std::string label;
    LearningCurve curve;
};

struct SvgStyle {
    int width = 800;
    int height = 500;
    std::string title;
    std::string x_label = "training step";
    std::string y_label = "mean evaluation episode length";
};

// Deterministic line chart: one polyline per series with a translucent
// mean +- sem band. Identical input produces byte-identical output.
std::string render_svg(const std::vector<SvgSeries>& series, const SvgStyle& style);

}  // namespace pbrs
