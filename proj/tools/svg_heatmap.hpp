// Minimal native SVG heatmap writer with a symmetric-log colour map.
#ifndef RABSORB_TOOLS_SVG_HEATMAP_HPP
#define RABSORB_TOOLS_SVG_HEATMAP_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace svgheat {

struct HeatmapOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    double linthresh_fraction = 1e-3;  // of max |value|
    bool log_y = false;
    std::string comment;  // embedded verbatim as an XML comment
    std::size_t max_cols = 480;
    std::size_t max_rows = 160;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Diverging blue-white-red map on t in [-1, 1].
inline std::string color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    int r, g, b;
    if (t < 0.0) {
        const double u = 1.0 + t;  // 0 at -1, 1 at 0
        r = static_cast<int>(5 + 250.0 * u);
        g = static_cast<int>(48 + 207.0 * u);
        b = static_cast<int>(97 + 158.0 * u);
    } else {
        const double u = 1.0 - t;
        r = static_cast<int>(103 + 152.0 * u);
        g = static_cast<int>(0 + 255.0 * u);
        b = static_cast<int>(31 + 224.0 * u);
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace detail

// rows[i][j]: value at (y = y_axis[i], x = x_axis[j]).
inline std::string render(const std::vector<double>& x_axis,
                          const std::vector<double>& y_axis,
                          const std::vector<std::vector<double>>& rows,
                          const HeatmapOptions& opts) {
    const std::size_t nx = x_axis.size(), ny = y_axis.size();
    const std::size_t sx = std::max<std::size_t>(1, nx / opts.max_cols);
    const std::size_t sy = std::max<std::size_t>(1, ny / opts.max_rows);

    double peak = 0.0;
    for (const auto& row : rows)
        for (double v : row) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) peak = 1.0;
    const double linthresh = opts.linthresh_fraction * peak;
    const double scale_max = std::log10(1.0 + 1.0 / opts.linthresh_fraction);
    auto symlog = [&](double v) {
        const double s = v < 0.0 ? -1.0 : 1.0;
        return s * std::log10(1.0 + std::abs(v) / linthresh) / scale_max;
    };

    const int margin_l = 70, margin_b = 50, margin_t = 40, margin_r = 90;
    const int plot_w = 640, plot_h = 420;
    const int width = margin_l + plot_w + margin_r;
    const int height = margin_t + plot_h + margin_b;

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!opts.comment.empty()) svg += "<!-- " + opts.comment + " -->\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(margin_l + plot_w / 2) + "\" y=\"24\" " +
           "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           opts.title + "</text>\n";

    const std::size_t cells_x = (nx + sx - 1) / sx;
    const std::size_t cells_y = (ny + sy - 1) / sy;
    const double cw = static_cast<double>(plot_w) / static_cast<double>(cells_x);
    const double ch = static_cast<double>(plot_h) / static_cast<double>(cells_y);
    for (std::size_t iy = 0; iy < cells_y; ++iy) {
        for (std::size_t ix = 0; ix < cells_x; ++ix) {
            // Block average keeps the decimation deterministic and smooth.
            double acc = 0.0;
            std::size_t count = 0;
            for (std::size_t i = iy * sy; i < std::min(ny, (iy + 1) * sy); ++i)
                for (std::size_t j = ix * sx; j < std::min(nx, (ix + 1) * sx); ++j) {
                    acc += rows[i][j];
                    ++count;
                }
            const double value = count > 0 ? acc / static_cast<double>(count) : 0.0;
            const double x = margin_l + static_cast<double>(ix) * cw;
            // y axis points up
            const double y = margin_t + plot_h - static_cast<double>(iy + 1) * ch;
            svg += "<rect x=\"" + detail::fmt(x) + "\" y=\"" + detail::fmt(y) + "\" width=\"" +
                   detail::fmt(cw + 0.5) + "\" height=\"" + detail::fmt(ch + 0.5) +
                   "\" fill=\"" + detail::color(symlog(value)) + "\"/>\n";
        }
    }

    // Axes
    svg += "<rect x=\"" + std::to_string(margin_l) + "\" y=\"" + std::to_string(margin_t) +
           "\" width=\"" + std::to_string(plot_w) + "\" height=\"" + std::to_string(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = k / 4.0;
        const double xv = x_axis.front() + fx * (x_axis.back() - x_axis.front());
        const double px = margin_l + fx * plot_w;
        svg += "<text x=\"" + detail::fmt(px) + "\" y=\"" +
               std::to_string(margin_t + plot_h + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt(xv) + "</text>\n";
        const double fy = k / 4.0;
        const double yv = opts.log_y ? y_axis.front() * std::pow(y_axis.back() / y_axis.front(), fy)
                                     : y_axis.front() + fy * (y_axis.back() - y_axis.front());
        const double py = margin_t + plot_h - fy * plot_h;
        svg += "<text x=\"" + std::to_string(margin_l - 6) + "\" y=\"" + detail::fmt(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               detail::fmt(yv) + "</text>\n";
    }
    svg += "<text x=\"" + std::to_string(margin_l + plot_w / 2) + "\" y=\"" +
           std::to_string(height - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           opts.x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + std::to_string(margin_t + plot_h / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" " +
           "transform=\"rotate(-90 16 " + std::to_string(margin_t + plot_h / 2) + ")\">" +
           opts.y_label + "</text>\n";

    // Colourbar
    const int bar_x = margin_l + plot_w + 24, bar_w = 16;
    const int bar_steps = 64;
    for (int k = 0; k < bar_steps; ++k) {
        const double t = 1.0 - 2.0 * (k + 0.5) / bar_steps;
        const double y = margin_t + static_cast<double>(k) * plot_h / bar_steps;
        svg += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + detail::fmt(y) +
               "\" width=\"" + std::to_string(bar_w) + "\" height=\"" +
               detail::fmt(static_cast<double>(plot_h) / bar_steps + 0.5) + "\" fill=\"" +
               detail::color(t) + "\"/>\n";
    }
    svg += "<rect x=\"" + std::to_string(bar_x) + "\" y=\"" + std::to_string(margin_t) +
           "\" width=\"" + std::to_string(bar_w) + "\" height=\"" + std::to_string(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    const std::string labels[3] = {"+" + detail::fmt(peak), "0", "-" + detail::fmt(peak)};
    const int label_y[3] = {margin_t + 10, margin_t + plot_h / 2, margin_t + plot_h};
    for (int k = 0; k < 3; ++k)
        svg += "<text x=\"" + std::to_string(bar_x + bar_w + 4) + "\" y=\"" +
               std::to_string(label_y[k]) +
               "\" font-family=\"sans-serif\" font-size=\"10\">" + labels[k] + "</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace svgheat

#endif
