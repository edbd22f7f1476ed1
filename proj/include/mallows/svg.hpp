#pragma once

#include <string>
#include <string_view>
#include <vector>

// Minimal static SVG line and scatter plots.
namespace mallows::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
    bool points = false; // markers only, no line
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false; // ignored unless every x is positive
    std::vector<Series> series;
};

std::string escape(std::string_view text);
std::string render(const Plot& plot);

} // namespace mallows::svg
