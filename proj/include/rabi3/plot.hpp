#pragma once

// Minimal deterministic SVG line plots. All numbers are formatted through
// std::to_chars, so output bytes are locale-independent and identical
// across reruns.

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace rabi3 {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string fmt_fixed(double v, int precision) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed,
                             precision);
    return std::string(buf.data(), res.ptr);
}

inline std::string fmt_short(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

} // namespace detail

inline void write_svg(const std::string& path, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel,
                      const std::vector<PlotSeries>& series) {
    if (series.empty()) throw EmptySeries("write_svg: no series");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            any = true;
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    if (!any) throw EmptySeries("write_svg: no finite points");
    if (xmax - xmin < 1e-300) { xmin -= 0.5; xmax += 0.5; }
    if (ymax - ymin < 1e-300) {
        const double pad = std::max(0.5, std::abs(ymax) * 0.5);
        ymin -= pad; ymax += pad;
    }

    const double w = 800, h = 560, ml = 80, mr = 24, mt = 44, mb = 56;
    const double pw = w - ml - mr, ph = h - mt - mb;
    const auto px = [&](double x) { return ml + pw * (x - xmin) / (xmax - xmin); };
    const auto py = [&](double y) { return mt + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    static const std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c",
                                                    "#9467bd", "#ff7f0e", "#8c564b"};

    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
           "viewBox=\"0 0 800 560\">\n";
    out << "<rect width=\"800\" height=\"560\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"16\">" << title << "</text>\n";

    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        const std::string gx = detail::fmt_fixed(px(xv), 2);
        const std::string gy = detail::fmt_fixed(py(yv), 2);
        out << "<line x1=\"" << gx << "\" y1=\"" << detail::fmt_fixed(mt, 2) << "\" x2=\"" << gx
            << "\" y2=\"" << detail::fmt_fixed(mt + ph, 2)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << detail::fmt_fixed(ml, 2) << "\" y1=\"" << gy << "\" x2=\""
            << detail::fmt_fixed(ml + pw, 2) << "\" y2=\"" << gy
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << gx << "\" y=\"" << detail::fmt_fixed(mt + ph + 18, 2)
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << detail::fmt_short(xv) << "</text>\n";
        out << "<text x=\"" << detail::fmt_fixed(ml - 6, 2) << "\" y=\"" << gy
            << "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"monospace\" "
               "font-size=\"11\">" << detail::fmt_short(yv) << "</text>\n";
    }
    out << "<rect x=\"" << detail::fmt_fixed(ml, 2) << "\" y=\"" << detail::fmt_fixed(mt, 2)
        << "\" width=\"" << detail::fmt_fixed(pw, 2) << "\" height=\"" << detail::fmt_fixed(ph, 2)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << detail::fmt_fixed(ml + pw / 2, 2) << "\" y=\""
        << detail::fmt_fixed(h - 12, 2)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">" << xlabel
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << detail::fmt_fixed(mt + ph / 2, 2)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " << detail::fmt_fixed(mt + ph / 2, 2) << ")\">" << ylabel
        << "</text>\n";

    for (size_t k = 0; k < series.size(); ++k) {
        const char* color = palette[k % palette.size()];
        std::string d;
        bool pen_down = false;
        for (const auto& [x, y] : series[k].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) { pen_down = false; continue; }
            d += pen_down ? " L " : " M ";
            d += detail::fmt_fixed(px(x), 2) + " " + detail::fmt_fixed(py(y), 2);
            pen_down = true;
        }
        if (!d.empty())
            out << "<path d=\"" << d.substr(1) << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        const double ly = mt + 16.0 + 16.0 * double(k);
        out << "<line x1=\"" << detail::fmt_fixed(ml + pw - 150, 2) << "\" y1=\""
            << detail::fmt_fixed(ly - 4, 2) << "\" x2=\"" << detail::fmt_fixed(ml + pw - 126, 2)
            << "\" y2=\"" << detail::fmt_fixed(ly - 4, 2) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << detail::fmt_fixed(ml + pw - 120, 2) << "\" y=\""
            << detail::fmt_fixed(ly, 2)
            << "\" font-family=\"monospace\" font-size=\"11\">" << series[k].name << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw Error("write failed: " + path);
}

} // namespace rabi3
