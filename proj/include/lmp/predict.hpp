#pragma once

#include "lmp/process.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lmp {

enum class PredictorMethod { TruncatedWK, Projection };

[[nodiscard]] std::string to_string(PredictorMethod method);

/**
 * @brief Linear predictor of X_{k+h} from X_1..X_k.
 *
 * The forecast is Σ_j weights[j-1] · X_{k+1-j}, i.e. weights[0] multiplies the
 * most recent observation.
 */
struct PredictorWeights {
    std::vector<double> weights;
    std::size_t k = 0;
    std::size_t h = 1;
    PredictorMethod method = PredictorMethod::TruncatedWK;
};

/**
 * @brief Truncated Wiener-Kolmogorov weights.
 *
 * h = 1 gives w_j = -a_j. For h > 1 the recursion
 *   X'(h) = -Σ_{j=1}^{h-1} a_j X'(h-j) - Σ_{j=1}^{k} a_{h-1+j} X_{k+1-j}
 * is unrolled into a single weight vector.
 */
[[nodiscard]] PredictorWeights truncated_wk_weights(const ProcessModel& model, std::size_t k,
                                                    std::size_t h);

/// Same, from precomputed AR coefficients (needs a_0..a_{k+h-1}).
[[nodiscard]] PredictorWeights truncated_wk_weights(const CoefSeq& ar, std::size_t k, std::size_t h);

/// Weights for every horizon 1..h_max at once; element i holds horizon i + 1.
[[nodiscard]] std::vector<PredictorWeights> truncated_wk_weight_path(const CoefSeq& ar, std::size_t k,
                                                                     std::size_t h_max);

/// Σ_j w_j X_{k+1-j}; observations are ordered X_1..X_k.
[[nodiscard]] double forecast(const PredictorWeights& weights, std::span<const double> observations);

/// (b_h, b_{h+1}, ..., b_{h+n}): the MA representation of the infinite-past h-step predictor.
[[nodiscard]] CoefSeq infinite_past_h_step_coeffs(const ProcessModel& model, std::size_t h,
                                                  std::size_t n);

/// CSV dump "j,w" with method/k/h in the comment line.
void write_csv(std::ostream& out, const PredictorWeights& weights, const ProcessModel& model);

}  // namespace lmp
