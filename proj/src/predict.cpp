#include "lmp/predict.hpp"

#include "lmp/csv.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace lmp {

std::string to_string(PredictorMethod method) {
    switch (method) {
        case PredictorMethod::TruncatedWK: return "truncated_wk";
        case PredictorMethod::Projection: return "projection";
    }
    return "unknown";
}

std::vector<PredictorWeights> truncated_wk_weight_path(const CoefSeq& ar, std::size_t k,
                                                       std::size_t h_max) {
    if (k == 0 || h_max == 0) {
        throw std::invalid_argument("truncated_wk_weights: k and h must be at least 1");
    }
    if (ar.kind != CoefKind::AR || ar.offset != 0) {
        throw std::invalid_argument("truncated_wk_weights: expects AR coefficients");
    }
    if (ar.size() < k + h_max) {
        throw std::invalid_argument("truncated_wk_weights: need a_0..a_{k+h-1}");
    }
    std::vector<PredictorWeights> path;
    path.reserve(h_max);
    for (std::size_t h = 1; h <= h_max; ++h) {
        std::vector<double> w(k);
        for (std::size_t j = 1; j <= k; ++j) {
            w[j - 1] = -ar[h - 1 + j];
        }
        for (std::size_t j = 1; j < h; ++j) {
            const double aj = ar[j];
            const auto& earlier = path[h - j - 1].weights;
            for (std::size_t i = 0; i < k; ++i) {
                w[i] -= aj * earlier[i];
            }
        }
        path.push_back(PredictorWeights{std::move(w), k, h, PredictorMethod::TruncatedWK});
    }
    return path;
}

PredictorWeights truncated_wk_weights(const CoefSeq& ar, std::size_t k, std::size_t h) {
    auto path = truncated_wk_weight_path(ar, k, h);
    return std::move(path.back());
}

PredictorWeights truncated_wk_weights(const ProcessModel& model, std::size_t k, std::size_t h) {
    if (k == 0 || h == 0) {
        throw std::invalid_argument("truncated_wk_weights: k and h must be at least 1");
    }
    return truncated_wk_weights(ar_coeffs(model, k + h - 1), k, h);
}

double forecast(const PredictorWeights& weights, std::span<const double> observations) {
    if (observations.size() != weights.k || weights.weights.size() != weights.k) {
        throw std::invalid_argument("forecast: expected " + std::to_string(weights.k)
                                    + " observations, got " + std::to_string(observations.size()));
    }
    const std::size_t k = weights.k;
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        acc += weights.weights[j - 1] * observations[k - j];
    }
    return acc;
}

CoefSeq infinite_past_h_step_coeffs(const ProcessModel& model, std::size_t h, std::size_t n) {
    if (h == 0) {
        throw std::invalid_argument("infinite_past_h_step_coeffs: h must be at least 1");
    }
    CoefSeq b = ma_coeffs(model, h + n);
    b.values.erase(b.values.begin(), b.values.begin() + static_cast<std::ptrdiff_t>(h));
    b.offset = h;
    return b;
}

void write_csv(std::ostream& out, const PredictorWeights& weights, const ProcessModel& model) {
    csv::write_comment(out, "method=" + to_string(weights.method) + " k=" + std::to_string(weights.k)
                                + " h=" + std::to_string(weights.h) + " " + model.describe());
    csv::write_header(out, {"j", "w"});
    for (std::size_t j = 1; j <= weights.k; ++j) {
        csv::Row row(out);
        row << static_cast<unsigned long long>(j) << weights.weights[j - 1];
        row.end();
    }
}

}  // namespace lmp
