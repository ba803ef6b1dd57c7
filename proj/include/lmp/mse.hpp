#pragma once

#include "lmp/fit.hpp"
#include "lmp/predict.hpp"
#include "lmp/process.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

namespace lmp {

enum class MseMethod { TruncatedWK, Projection, InfinitePast };

[[nodiscard]] std::string to_string(MseMethod method);
[[nodiscard]] MseMethod to_mse_method(PredictorMethod method) noexcept;

/**
 * @brief Mean-squared prediction error split into the method floor
 * σ_ε² Σ_{l<h} b_l² and the excess due to the finite observation span.
 */
struct MseReport {
    MseMethod method = MseMethod::TruncatedWK;
    double d = 0.0;
    std::size_t k = 0;
    std::size_t h = 1;
    double total = 0.0;
    double floor = 0.0;
    double excess = 0.0;
    double certified_tol = 0.0;
};

/// E[(X_{k+h} - Σ w_j X_{k+1-j})^2] = σ(0) - 2 Σ w_j σ(h-1+j) + Σ w_j w_l σ(j-l).
[[nodiscard]] double prediction_quadratic_form(std::span<const double> acvf,
                                               std::span<const double> weights, std::size_t h);

/// σ_ε² Σ_{l<h} b_l²; ma must hold b_0..b_{h-1}.
[[nodiscard]] double h_step_floor(const CoefSeq& ma, std::size_t h);

/// Needs acvf up to lag k + h - 1 and b_0..b_{h-1}.
[[nodiscard]] MseReport mse_of_weights(const CoefSeq& acvf, const CoefSeq& ma,
                                       const PredictorWeights& weights);
[[nodiscard]] MseReport mse_of_weights(const ProcessModel& model, const PredictorWeights& weights);

[[nodiscard]] MseReport infinite_past_mse(const CoefSeq& ma, std::size_t h);
[[nodiscard]] MseReport infinite_past_mse(const ProcessModel& model, std::size_t h);

/// σ_ε² Σ_{j>=0} t(j)^2 with t = Φ ⋆ b, plus the extrapolated tail beyond n_terms.
struct SpectralContrast {
    double value = 0.0;
    double tail = 0.0;
    double error_bound = 0.0;
};

inline constexpr std::size_t kDefaultSpectralTerms = std::size_t{1} << 20;

/**
 * Prediction error of a fitted AR polynomial through the MA representation of
 * the residual process η = Φ(B) X. The tail beyond n_terms is extrapolated
 * from partial sums at n/8, n/4, n/2, n using Σ_{j>N} t_j² ≈ Σ_r c_r N^{2d-1-r};
 * error_bound is the spread between the three- and four-level extrapolations.
 * @throws CertificationError when error_bound exceeds 1e-8 · value.
 */
[[nodiscard]] SpectralContrast spectral_contrast_mse(const ProcessModel& model, const FittedAr& fit,
                                                     std::size_t n_terms = kDefaultSpectralTerms);

/**
 * Three-term split of the difference between the AR(k) fit error and σ_ε² for F(d):
 *   term_quad  = Σ_{j,l<=k} (a_{j,k} - a_j)(a_l - a_{l,k}) σ(j-l)           (< 0)
 *   term_cross = 2 Σ_{j<=k} (a_{j,k} - a_j) Σ_{l>k} a_l σ(j-l)               (> 0)
 *   term_trunc = Σ_{j<=k} a_j Σ_{l>k} a_l σ(j-l) = -(truncation excess)   (< 0)
 * The tails Σ_{l>k} a_l σ(j-l) are closed exactly through Σ_{l>=0} a_l σ(l-j) = σ_ε² [j = 0].
 */
struct ErrorDecomposition {
    double term_quad = 0.0;
    double term_cross = 0.0;
    double term_trunc = 0.0;

    /// Equals -(AR(k) excess).
    [[nodiscard]] double sum() const noexcept { return term_quad + term_cross + term_trunc; }
};

[[nodiscard]] ErrorDecomposition error_decomposition(const ProcessModel& model, std::size_t k);

/// CSV header and row for MseReport: method,d,k,h,total,floor,excess,certified_tol.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const MseReport& report);

}  // namespace lmp
