#include "mallows/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mallows::svg {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 190;
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string tick_label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!(lo <= hi)) {
            lo = 0;
            hi = 1;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

} // namespace

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string render(const Plot& plot) {
    bool log_x = plot.log_x;
    for (const Series& s : plot.series) {
        for (double x : s.x) log_x = log_x && x > 0;
    }
    auto tx = [&](double x) { return log_x ? std::log10(x) : x; };

    Range xr, yr;
    for (const Series& s : plot.series) {
        for (double x : s.x) xr.add(tx(x));
        for (double y : s.y) yr.add(y);
    }
    xr.settle();
    yr.settle();
    if (yr.lo > 0 && yr.lo < 0.5 * yr.hi) yr.lo = 0;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (tx(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string o;
    o += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         escape(plot.title) + "</text>\n";
    o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 5; ++t) {
        const double fy = yr.lo + (yr.hi - yr.lo) * t / 5.0;
        const double y = py(fy);
        o += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(y) +
             "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + num(kLeft - 7) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + tick_label(fy) +
             "</text>\n";
        const double gx = xr.lo + (xr.hi - xr.lo) * t / 5.0;
        const double x = kLeft + pw * t / 5.0;
        o += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(kTop + ph + 4) + "\" stroke=\"black\"/>\n";
        o += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
             tick_label(log_x ? std::pow(10.0, gx) : gx) + "</text>\n";
    }
    o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 18) + "\" text-anchor=\"middle\">" +
         escape(plot.x_label) + (log_x ? " (log scale)" : "") + "</text>\n";
    o += "<text transform=\"translate(18 " + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(plot.y_label) + "</text>\n";

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const Series& s = plot.series[i];
        const std::string colour = kPalette[i % std::size(kPalette)];
        const std::size_t count = std::min(s.x.size(), s.y.size());
        if (s.points) {
            for (std::size_t k = 0; k < count; ++k) {
                if (!std::isfinite(s.y[k])) continue;
                o += "<circle cx=\"" + num(px(s.x[k])) + "\" cy=\"" + num(py(s.y[k])) + "\" r=\"3\" fill=\"" +
                     colour + "\" fill-opacity=\"0.7\"/>\n";
            }
        } else {
            std::string pts;
            for (std::size_t k = 0; k < count; ++k) {
                if (!std::isfinite(s.y[k])) continue;
                if (!pts.empty()) pts += ' ';
                pts += num(px(s.x[k])) + "," + num(py(s.y[k]));
            }
            o += "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.8\"" +
                 (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + " points=\"" + pts + "\"/>\n";
        }
        const double ly = kTop + 10 + 18.0 * static_cast<double>(i);
        const double lx = kLeft + pw + 12;
        if (s.points) {
            o += "<circle cx=\"" + num(lx + 12) + "\" cy=\"" + num(ly) + "\" r=\"3\" fill=\"" + colour + "\"/>\n";
        } else {
            o += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 24) + "\" y2=\"" + num(ly) +
                 "\" stroke=\"" + colour + "\" stroke-width=\"1.8\"" +
                 (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        }
        o += "<text x=\"" + num(lx + 30) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.label) + "</text>\n";
    }
    o += "</svg>\n";
    return o;
}

} // namespace mallows::svg
