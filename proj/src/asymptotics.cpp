#include "lmp/asymptotics.hpp"

#include "lmp/errors.hpp"
#include "lmp/fit.hpp"
#include "lmp/mse.hpp"
#include "lmp/predict.hpp"
#include "lmp/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lmp {

double constant_C(double d) {
    if (!(d > 0.0 && d < 0.5)) {
        throw InvalidModel("constant_C: d must lie in (0, 1/2), got " + std::to_string(d));
    }
    const auto value = gamma_ratio({1.0 - 2.0 * d, 2.0 * d}, {-d, -d, d, 1.0 + d});
    return 2.0 * value.value();
}

double truncation_excess(const ProcessModel& model, std::size_t k) {
    return mse_of_weights(model, truncated_wk_weights(model, k, 1)).excess;
}

double ar_fit_excess(const ProcessModel& model, std::size_t k) {
    const auto sigma = acvf(model, k);
    const auto b = ma_coeffs(model, 0);
    return mse_of_weights(sigma, b, yule_walker(sigma, k).as_weights()).excess;
}

double ratio_r(double d, std::size_t k) {
    const auto parts = error_decomposition(ProcessModel::frac_noise(d), k);
    return -(parts.term_quad + parts.term_cross) / parts.term_trunc;
}

double ratio_r_by_subtraction(double d, std::size_t k) {
    const auto model = ProcessModel::frac_noise(d);
    const double trunc = truncation_excess(model, k);
    return (trunc - ar_fit_excess(model, k)) / trunc;
}

RateFit rate_fit(std::span<const std::pair<double, double>> points) {
    if (points.size() < 5) {
        throw std::invalid_argument("rate_fit: need at least 5 grid points");
    }
    RateFit fit;
    fit.grid.assign(points.begin(), points.end());
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [x, v] : points) {
        if (!(x > 0.0) || !(v > 0.0)) {
            throw std::invalid_argument("rate_fit: grid values must be strictly positive");
        }
        sx += std::log(x);
        sy += std::log(v);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& [x, v] : points) {
        const double dx = std::log(x) - mx;
        const double dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("rate_fit: grid abscissae must not all coincide");
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

PowerLawFit2 power_law_fit2(std::span<const PowerLawSample> samples) {
    if (samples.size() < 5) {
        throw std::invalid_argument("power_law_fit2: need at least 5 samples");
    }
    // Normal equations on centred logs.
    const double n = static_cast<double>(samples.size());
    double mx = 0.0;
    double my = 0.0;
    double mv = 0.0;
    for (const auto& s : samples) {
        if (!(s.x > 0.0) || !(s.y > 0.0) || !(s.value > 0.0)) {
            throw std::invalid_argument("power_law_fit2: samples must be strictly positive");
        }
        mx += std::log(s.x);
        my += std::log(s.y);
        mv += std::log(s.value);
    }
    mx /= n;
    my /= n;
    mv /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    double sxv = 0.0;
    double syv = 0.0;
    double svv = 0.0;
    for (const auto& s : samples) {
        const double dx = std::log(s.x) - mx;
        const double dy = std::log(s.y) - my;
        const double dv = std::log(s.value) - mv;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
        sxv += dx * dv;
        syv += dy * dv;
        svv += dv * dv;
    }
    const double det = sxx * syy - sxy * sxy;
    if (!(std::abs(det) > 0.0)) {
        throw std::invalid_argument("power_law_fit2: degenerate design");
    }
    PowerLawFit2 fit;
    fit.exponent_x = (sxv * syy - syv * sxy) / det;
    fit.exponent_y = (syv * sxx - sxv * sxy) / det;
    fit.log_constant = mv - fit.exponent_x * mx - fit.exponent_y * my;
    const double explained = fit.exponent_x * sxv + fit.exponent_y * syv;
    fit.r_squared = svv == 0.0 ? 1.0 : explained / svv;
    return fit;
}

std::vector<double> default_c_grid() {
    std::vector<double> grid(50);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = 0.01 + 0.48 * static_cast<double>(i) / 49.0;
    }
    return grid;
}

}  // namespace lmp
