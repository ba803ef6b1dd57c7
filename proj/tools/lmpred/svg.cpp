#include "lmpred/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <ostream>
#include <sstream>

namespace lmpred::svg {

namespace {

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::fixed << std::setprecision(2) << x;
    return s.str();
}

std::string tick_label(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(4) << x;
    return s.str();
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
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

struct Axis {
    bool log = false;
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] double transform(double v) const { return log ? std::log10(v) : v; }
    [[nodiscard]] bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }

    void fit(const std::vector<double>& values) {
        lo = std::numeric_limits<double>::infinity();
        hi = -lo;
        for (double v : values) {
            if (usable(v)) {
                lo = std::min(lo, transform(v));
                hi = std::max(hi, transform(v));
            }
        }
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        if (!log) {
            const double pad = 0.04 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
    }

    [[nodiscard]] std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double e = std::ceil(lo); e <= std::floor(hi) + 1e-9; e += 1.0) {
                out.push_back(e);
            }
            if (out.size() >= 2) {
                return out;
            }
            out.clear();
        }
        const double raw = (hi - lo) / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            if (m * mag >= raw) {
                step = m * mag;
                break;
            }
        }
        for (double t = std::ceil(lo / step) * step; t <= hi + 1e-12 * step; t += step) {
            out.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
        }
        return out;
    }

    [[nodiscard]] std::string label(double t) const { return tick_label(log ? std::pow(10.0, t) : t); }
};

}  // namespace

void write_line_chart(std::ostream& out, const std::vector<Series>& series, const ChartOptions& options) {
    const double left = 80.0;
    const double right = 170.0;
    const double top = 40.0;
    const double bottom = 60.0;
    const double w = options.width;
    const double h = options.height;
    const double pw = w - left - right;
    const double ph = h - top - bottom;

    Axis ax{options.log_x};
    Axis ay{options.log_y};
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    ax.fit(xs);
    ay.fit(ys);
    auto px = [&](double v) { return left + (ax.transform(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return top + ph - (ay.transform(v) - ay.lo) / (ay.hi - ay.lo) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
        << options.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(options.title) << "</text>\n";
    out << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\""
        << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ax.ticks()) {
        const double x = left + (t - ax.lo) / (ax.hi - ax.lo) * pw;
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
            << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
            << ax.label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = top + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph;
        out << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left) << "\" y2=\""
            << num(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
            << ay.label(t) << "</text>\n";
    }
    out << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(h - 15) << "\" text-anchor=\"middle\">"
        << escape(options.x_label) << "</text>\n";
    out << "<text transform=\"translate(18," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(options.y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* colour = kPalette[i % kPalette.size()];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.6\" points=\"";
        bool first = true;
        for (std::size_t j = 0; j < std::min(s.x.size(), s.y.size()); ++j) {
            if (!ax.usable(s.x[j]) || !ay.usable(s.y[j])) {
                continue;
            }
            out << (first ? "" : " ") << num(px(s.x[j])) << ',' << num(py(s.y[j]));
            first = false;
        }
        out << "\"/>\n";
        const double ly = top + 12.0 + 18.0 * static_cast<double>(i);
        const double lx = left + pw + 14.0;
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 22) << "\" y2=\""
            << num(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label)
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace lmpred::svg
