#include "gibbsmap/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gibbsmap/csv_io.hpp"

namespace gibbsmap {

namespace {

constexpr double kPanelWidth = 760.0;
constexpr double kPanelHeight = 180.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 35.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo;
    double hi;

    double map(double v, double pix_lo, double pix_hi) const {
        if (hi == lo) return 0.5 * (pix_lo + pix_hi);
        return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
    }
};

Range pad(double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    double span = hi - lo;
    if (span <= 0.0) span = std::max(1e-12, std::abs(lo) * 1e-3 + 1e-12);
    return Range{lo - 0.05 * span, hi + 0.05 * span};
}

void draw_panel(std::ostringstream& svg, double top, const std::string& title,
                const std::vector<double>& xs, const std::vector<double>& ys) {
    const double plot_left = kMarginLeft;
    const double plot_right = kPanelWidth - kMarginRight;
    const double plot_top = top + kMarginTop;
    const double plot_bottom = top + kPanelHeight - kMarginBottom;

    const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
    const auto [ymin_it, ymax_it] = std::minmax_element(ys.begin(), ys.end());
    const Range xr = pad(*xmin_it, *xmax_it);
    const Range yr = pad(*ymin_it, *ymax_it);

    svg << "<rect x=\"" << fmt(plot_left) << "\" y=\"" << fmt(plot_top)
        << "\" width=\"" << fmt(plot_right - plot_left)
        << "\" height=\"" << fmt(plot_bottom - plot_top)
        << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << fmt(plot_left) << "\" y=\"" << fmt(top + 20.0)
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << title << "</text>\n";

    // axis tick labels at the extremes, enough to read the scale
    svg << "<text x=\"" << fmt(plot_left - 8.0) << "\" y=\"" << fmt(plot_bottom)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
        << fmt(*ymin_it) << "</text>\n";
    svg << "<text x=\"" << fmt(plot_left - 8.0) << "\" y=\"" << fmt(plot_top + 8.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
        << fmt(*ymax_it) << "</text>\n";
    svg << "<text x=\"" << fmt(plot_left) << "\" y=\"" << fmt(plot_bottom + 15.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(*xmin_it) << "</text>\n";
    svg << "<text x=\"" << fmt(plot_right) << "\" y=\"" << fmt(plot_bottom + 15.0)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
        << fmt(*xmax_it) << "</text>\n";

    svg << "<polyline fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) svg << ' ';
        svg << fmt(xr.map(xs[i], plot_left, plot_right)) << ','
            << fmt(yr.map(ys[i], plot_bottom, plot_top));
    }
    svg << "\"/>\n";
}

} // namespace

void write_trace_svg(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
    if (trace.empty()) throw std::invalid_argument("write_trace_svg: empty trace");
    const std::size_t dim = trace.front().theta.size();
    const std::size_t n_panels = dim + 1;

    std::vector<double> iters(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) iters[i] = static_cast<double>(trace[i].iteration);

    std::ostringstream svg;
    const double total_height = kPanelHeight * static_cast<double>(n_panels);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kPanelWidth)
        << "\" height=\"" << fmt(total_height) << "\" viewBox=\"0 0 " << fmt(kPanelWidth)
        << ' ' << fmt(total_height) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    std::vector<double> ys(trace.size());
    for (std::size_t d = 0; d < dim; ++d) {
        for (std::size_t i = 0; i < trace.size(); ++i) ys[i] = trace[i].theta[d];
        draw_panel(svg, kPanelHeight * static_cast<double>(d),
                   "theta_" + std::to_string(d), iters, ys);
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        // log scale keeps the geometric decay readable over many decades
        ys[i] = std::log10(std::max(trace[i].temperature, 1e-300));
    }
    draw_panel(svg, kPanelHeight * static_cast<double>(dim), "log10 temperature", iters, ys);

    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file for writing: " + path.string());
    out << svg.str();
    out.flush();
    if (!out) throw IoError("failed writing output file: " + path.string());
}

} // namespace gibbsmap
