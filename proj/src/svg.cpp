#include "pbrs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "pbrs/types.hpp"

namespace pbrs {

namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

// Round tick spacing to 1/2/5 times a power of ten.
double nice_step(double range, int target_ticks) {
    const double raw = range / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

}  // namespace

std::string render_svg(const std::vector<SvgSeries>& series, const SvgStyle& style) {
    if (series.empty()) throw std::invalid_argument("render_svg: no series");
    for (const auto& s : series)
        if (s.curve.rows.empty()) throw std::invalid_argument("render_svg: empty series");

    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const auto& s : series) {
        for (const CurveRow& r : s.curve.rows) {
            x_min = std::min(x_min, static_cast<double>(r.step));
            x_max = std::max(x_max, static_cast<double>(r.step));
            y_min = std::min(y_min, r.mean_len - r.sem_len);
            y_max = std::max(y_max, r.mean_len + r.sem_len);
        }
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double ml = 70, mr = 20, mt = style.title.empty() ? 20 : 40, mb = 50;
    const double pw = style.width - ml - mr;
    const double ph = style.height - mt - mb;
    auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    auto py = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
        << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << ' '
        << style.height << "\">\n";
    svg << "<rect width=\"" << style.width << "\" height=\"" << style.height
        << "\" fill=\"white\"/>\n";
    if (!style.title.empty())
        svg << "<text x=\"" << style.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << style.title << "</text>\n";

    // axes
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
        << fmt(ml + pw) << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt(ml) << "\" y1=\"" << fmt(mt) << "\" x2=\"" << fmt(ml)
        << "\" y2=\"" << fmt(mt + ph) << "\" stroke=\"black\"/>\n";

    const double x_step = nice_step(x_max - x_min, 6);
    for (double x = std::ceil(x_min / x_step) * x_step; x <= x_max + 1e-9; x += x_step) {
        svg << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(mt + ph) << "\" x2=\""
            << fmt(px(x)) << "\" y2=\"" << fmt(mt + ph + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(mt + ph + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(x) << "</text>\n";
    }
    const double y_step = nice_step(y_max - y_min, 6);
    for (double y = std::ceil(y_min / y_step) * y_step; y <= y_max + 1e-9; y += y_step) {
        svg << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(py(y)) << "\" x2=\""
            << fmt(ml) << "\" y2=\"" << fmt(py(y)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(ml - 8) << "\" y=\"" << fmt(py(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(y) << "</text>\n";
    }
    svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(mt + ph + 38)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << style.x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << fmt(mt + ph / 2) << ")\">" << style.y_label
        << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& rows = series[i].curve.rows;
        const char* color = kPalette[i % kPaletteSize];

        // mean +- sem band: forward along the top edge, back along the bottom
        std::string band;
        for (const CurveRow& r : rows)
            band += fmt(px(static_cast<double>(r.step))) + "," +
                    fmt(py(r.mean_len + r.sem_len)) + " ";
        for (auto it = rows.rbegin(); it != rows.rend(); ++it)
            band += fmt(px(static_cast<double>(it->step))) + "," +
                    fmt(py(it->mean_len - it->sem_len)) + " ";
        svg << "<polygon points=\"" << band << "\" fill=\"" << color
            << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";

        std::string line;
        for (const CurveRow& r : rows)
            line += fmt(px(static_cast<double>(r.step))) + "," + fmt(py(r.mean_len)) + " ";
        svg << "<polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";

        const double ly = mt + 14 + 16 * static_cast<double>(i);
        svg << "<line x1=\"" << fmt(ml + pw - 150) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(ml + pw - 130) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(ml + pw - 125) << "\" y=\"" << fmt(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[i].label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace pbrs
