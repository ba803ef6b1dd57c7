#pragma once

#include "lmp/predict.hpp"
#include "lmp/process.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace lmp {

/// Symmetric Toeplitz system Σ x = rhs with Σ[i][j] = first_row[|i - j|].
struct ToeplitzSystem {
    std::vector<double> first_row;
    std::vector<double> rhs;

    [[nodiscard]] std::size_t order() const noexcept { return rhs.size(); }
};

/**
 * @brief Fitted AR(k) predictor.
 *
 * phi holds predictor weights (forecast = Σ phi_j X_{n+1-j}); a_fit holds the
 * operator convention a_{0,k} = 1, a_{j,k} = -phi_j, directly comparable to a_j.
 */
struct FittedAr {
    std::size_t order = 0;
    std::vector<double> phi;
    std::vector<double> a_fit;
    double innovation_variance = 0.0;

    /// The same predictor as PredictorWeights (method Projection, h = 1).
    [[nodiscard]] PredictorWeights as_weights() const;
};

/// Relative floor below which a Levinson variance iterate is treated as breakdown.
inline constexpr double kVarianceFloorFraction = 1e-3;

/**
 * Solves a symmetric positive definite Toeplitz system by the Levinson
 * recursion in O(k^2).
 * @throws NumericError if a prediction-variance iterate is <= 0 (not positive
 *         definite) or falls below variance_floor.
 */
[[nodiscard]] std::vector<double> solve_levinson(const ToeplitzSystem& system,
                                                 double variance_floor = 0.0);

/// max_i |(Σ x)_i - rhs_i|
[[nodiscard]] double toeplitz_residual(const ToeplitzSystem& system, std::span<const double> x);

/**
 * Yule-Walker fit of order k by Levinson-Durbin. The variance floor is
 * kVarianceFloorFraction · σ_ε² of the sequence's model.
 */
[[nodiscard]] FittedAr yule_walker(const CoefSeq& acvf, std::size_t k);
[[nodiscard]] FittedAr yule_walker(std::span<const double> acvf, std::size_t k,
                                   double variance_floor = 0.0);

/**
 * Closed-form Yule-Walker solution for F(d):
 *   a_{j,k} = a_j Γ(k+1) Γ(k-d-j+1) / (Γ(k-j+1) Γ(k-d+1)),
 * innovation variance σ_ε² Γ(k+1) Γ(k+1-2d) / Γ(k+1-d)^2.
 * Checks a_j - a_{j,k} > 0 for 1 <= j <= k.
 */
[[nodiscard]] FittedAr closed_form_ar_fit(double d, std::size_t k, double noise_variance = 1.0);

/// Orthogonal projection of X_{k+h} onto span(X_1..X_k): weights Σ_k^{-1} (σ(h-1+j))_j.
[[nodiscard]] PredictorWeights projection_weights(const CoefSeq& acvf, std::size_t k, std::size_t h);

/// CSV dump "j,phi,a_fit".
void write_csv(std::ostream& out, const FittedAr& fit, const ProcessModel& model);

}  // namespace lmp
