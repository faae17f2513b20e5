// report_io.hpp — CSV and SVG emitters for scaling reports. CSV is the
// contract; the SVG log-log plot is a convenience.

#pragma once

#include "floquet/util.hpp"
#include "floquet/verify.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace floquet {

// Columns: model, L, T, q, error, floor_flag; footer rows carry the fit.
inline std::string to_csv(const ScalingReport& r) {
    std::ostringstream out;
    out << "model,L,T,q,error,floor_flag\n";
    for (const auto& p : r.points) {
        out << r.model << ',' << r.order << ',' << fmt_double(p.T) << ',' << p.q << ','
            << fmt_double(p.error) << ',' << (p.floored ? 1 : 0) << '\n';
    }
    out << "slope,,,," << fmt_double(r.fitted_slope) << ",\n";
    out << "intercept,,,," << fmt_double(r.fitted_intercept) << ",\n";
    out << "r2,,,," << fmt_double(r.r_squared) << ",\n";
    return out.str();
}

inline std::string to_csv(const PropertyReport& r) {
    std::ostringstream out;
    out << "model,L,check,measured,threshold,pass\n";
    for (const auto& c : r.checks) {
        out << r.model << ',' << r.order << ',' << c.name << ',' << fmt_double(c.measured) << ','
            << fmt_double(c.threshold) << ',' << (c.pass ? 1 : 0) << '\n';
    }
    return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

namespace detail {

struct SvgMapper {
    double lo_x, hi_x, lo_y, hi_y;
    double width = 640, height = 480, margin = 60;
    double px(double logx) const {
        return margin + (logx - lo_x) / (hi_x - lo_x) * (width - 2 * margin);
    }
    double py(double logy) const {
        return height - margin - (logy - lo_y) / (hi_y - lo_y) * (height - 2 * margin);
    }
};

} // namespace detail

// Log-log scatter with the fitted line and a target-slope guide.
inline std::string to_svg(const ScalingReport& r) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : r.points) {
        if (p.error > 0.0) pts.emplace_back(std::log10(p.T), std::log10(p.error));
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    if (pts.size() < 2) {
        out << "<text x=\"60\" y=\"60\" font-size=\"14\">not enough points to plot</text>\n</svg>\n";
        return out.str();
    }
    detail::SvgMapper m{pts.front().first, pts.front().first, pts.front().second, pts.front().second};
    for (const auto& [x, y] : pts) {
        m.lo_x = std::min(m.lo_x, x); m.hi_x = std::max(m.hi_x, x);
        m.lo_y = std::min(m.lo_y, y); m.hi_y = std::max(m.hi_y, y);
    }
    if (m.hi_x - m.lo_x < 1e-12) m.hi_x = m.lo_x + 1.0;
    if (m.hi_y - m.lo_y < 1e-12) m.hi_y = m.lo_y + 1.0;

    out << "<line x1=\"" << fmt_double(m.px(m.lo_x)) << "\" y1=\"" << fmt_double(m.py(m.lo_y))
        << "\" x2=\"" << fmt_double(m.px(m.hi_x)) << "\" y2=\"" << fmt_double(m.py(m.lo_y))
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt_double(m.px(m.lo_x)) << "\" y1=\"" << fmt_double(m.py(m.lo_y))
        << "\" x2=\"" << fmt_double(m.px(m.lo_x)) << "\" y2=\"" << fmt_double(m.py(m.hi_y))
        << "\" stroke=\"black\"/>\n";

    const double ln10 = std::log(10.0);
    auto fit_yat = [&](double logx) {
        return (r.fitted_intercept + r.fitted_slope * logx * ln10) / ln10;
    };
    out << "<line x1=\"" << fmt_double(m.px(m.lo_x)) << "\" y1=\"" << fmt_double(m.py(fit_yat(m.lo_x)))
        << "\" x2=\"" << fmt_double(m.px(m.hi_x)) << "\" y2=\"" << fmt_double(m.py(fit_yat(m.hi_x)))
        << "\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";

    // target-slope guide through the first non-floored point
    const double gx0 = pts.front().first, gy0 = pts.front().second;
    out << "<line x1=\"" << fmt_double(m.px(gx0)) << "\" y1=\"" << fmt_double(m.py(gy0))
        << "\" x2=\"" << fmt_double(m.px(m.hi_x)) << "\" y2=\""
        << fmt_double(m.py(gy0 + r.target_slope * (m.hi_x - gx0)))
        << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";

    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool floored = r.points[i].floored;
        out << "<circle cx=\"" << fmt_double(m.px(pts[i].first)) << "\" cy=\""
            << fmt_double(m.py(pts[i].second)) << "\" r=\"4\" fill=\""
            << (floored ? "lightgray" : "crimson") << "\"/>\n";
    }
    out << "<text x=\"60\" y=\"30\" font-size=\"14\">" << r.model << " " << r.mode
        << " L=" << r.order << "  slope=" << fmt_double(r.fitted_slope) << " (target "
        << fmt_double(r.target_slope) << ")</text>\n";
    out << "<text x=\"300\" y=\"470\" font-size=\"12\">log10 T</text>\n";
    out << "<text x=\"8\" y=\"240\" font-size=\"12\" transform=\"rotate(-90 14 240)\">log10 error</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace floquet
