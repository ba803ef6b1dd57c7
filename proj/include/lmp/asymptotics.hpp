#pragma once

#include "lmp/process.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lmp {

/**
 * @brief Constant of the k^-1 law for the one-step truncation excess of F(d):
 * k · excess(k) → σ_ε² C(d).
 *
 * C(d) = 2 Γ(1-2d) Γ(2d) / (Γ(-d)² Γ(d) Γ(1+d)), so that C(d) ~ d² as d → 0.
 * @throws InvalidModel outside 0 < d < 1/2.
 */
[[nodiscard]] double constant_C(double d);

/// One-step excess of the truncated Wiener-Kolmogorov predictor over σ_ε².
[[nodiscard]] double truncation_excess(const ProcessModel& model, std::size_t k);

/// One-step excess of the Yule-Walker AR(k) predictor over σ_ε².
[[nodiscard]] double ar_fit_excess(const ProcessModel& model, std::size_t k);

/**
 * Fraction of the truncation excess removed by the AR(k) fit, for F(d):
 *   r(k) = -(term_quad + term_cross) / term_trunc
 *        = (excess_trunc - excess_ar) / excess_trunc.
 */
[[nodiscard]] double ratio_r(double d, std::size_t k);

/// Same ratio by subtracting the two excesses directly; loses precision for large k.
[[nodiscard]] double ratio_r_by_subtraction(double d, std::size_t k);

/// Least-squares line through (log x, log value).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> grid;
};

/// @throws std::invalid_argument with fewer than 5 points or a non-positive coordinate.
[[nodiscard]] RateFit rate_fit(std::span<const std::pair<double, double>> points);

struct PowerLawSample {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
};

/// log value = log c + ex · log x + ey · log y, by least squares.
struct PowerLawFit2 {
    double log_constant = 0.0;
    double exponent_x = 0.0;
    double exponent_y = 0.0;
    double r_squared = 0.0;
};

[[nodiscard]] PowerLawFit2 power_law_fit2(std::span<const PowerLawSample> samples);

/// 50 equally spaced points in [0.01, 0.49].
[[nodiscard]] std::vector<double> default_c_grid();

}  // namespace lmp
