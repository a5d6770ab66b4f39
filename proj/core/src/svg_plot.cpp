#include "rumor/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>

namespace rumor {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    if (v != 0.0 && (std::fabs(v) >= 1e4 || std::fabs(v) < 1e-3))
        std::snprintf(buf, sizeof buf, "%.0e", v);
    else
        std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(std::string_view s) {
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

double nice_step(double span, int target) {
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double r = raw / mag;
    double step = r < 1.5 ? 1.0 : r < 3.0 ? 2.0 : r < 7.0 ? 5.0 : 10.0;
    return step * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return !(lo <= hi); }
    void pad() {
        if (empty()) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi - lo <= 1e-12 * std::max(1.0, std::fabs(hi))) {
            double d = std::max(1.0, std::fabs(hi)) * 0.5;
            lo -= d;
            hi += d;
        }
    }
};

std::vector<double> linear_ticks(Range& r) {
    double step = nice_step(r.hi - r.lo, 5);
    r.lo = std::floor(r.lo / step) * step;
    r.hi = std::ceil(r.hi / step) * step;
    std::vector<double> ticks;
    for (double t = r.lo; t <= r.hi + step * 1e-9; t += step)
        ticks.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
    return ticks;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
    auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0.0);
    };

    Range xr, yr;
    for (const auto& s : series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (usable(s.x[i], s.y[i])) {
                xr.add(tx(s.x[i]));
                yr.add(s.y[i]);
            }
    xr.pad();
    yr.pad();

    std::vector<double> xticks;
    if (spec.log_x) {
        xr.lo = std::floor(xr.lo);
        xr.hi = std::ceil(xr.hi);
        if (xr.hi == xr.lo) xr.hi += 1.0;
        for (double t = xr.lo; t <= xr.hi; t += 1.0) xticks.push_back(t);
    } else {
        xticks = linear_ticks(xr);
    }
    std::vector<double> yticks = linear_ticks(yr);

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
           escape(spec.title) + "</text>\n";

    for (double t : xticks) {
        double x = px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(kTop + ph) + "\" stroke=\"#e0e0e0\"/>\n";
        std::string label = spec.log_x ? tick_label(std::pow(10.0, t)) : tick_label(t);
        out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 16) +
               "\" text-anchor=\"middle\">" + label + "</text>\n";
    }
    for (double t : yticks) {
        double y = py(t);
        out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + pw) +
               "\" y2=\"" + num(y) + "\" stroke=\"#e0e0e0\"/>\n";
        out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
               tick_label(t) + "</text>\n";
    }
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 14) +
           "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num(kTop + ph / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* colour = kPalette[si % std::size(kPalette)];
        std::string points;
        std::string marks;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            std::string p = num(px(tx(s.x[i]))) + "," + num(py(s.y[i]));
            if (!points.empty()) points += " ";
            points += p;
            if (spec.markers)
                marks += "<circle cx=\"" + num(px(tx(s.x[i]))) + "\" cy=\"" + num(py(s.y[i])) +
                         "\" r=\"2.5\" fill=\"" + colour + "\"/>\n";
        }
        if (!points.empty())
            out += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
                   "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        out += marks;

        double ly = kTop + 10 + 16.0 * static_cast<double>(si);
        double lx = kLeft + pw + 12;
        out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 18) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(lx + 24) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.label) +
               "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace rumor
