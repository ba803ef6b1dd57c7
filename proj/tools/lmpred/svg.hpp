#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lmpred::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 460;
};

/// Self-contained SVG line chart with axes, ticks and a legend.
/// Points that cannot be shown on a log axis (<= 0) are skipped.
void write_line_chart(std::ostream& out, const std::vector<Series>& series, const ChartOptions& options);

}  // namespace lmpred::svg
