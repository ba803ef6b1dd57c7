#pragma once

#include "lmp/predict.hpp"
#include "lmp/process.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lmp {

enum class SimMethod { CirculantEmbedding, MaTruncation };

[[nodiscard]] std::string to_string(SimMethod method);

struct SimulationPlan {
    ProcessModel model = ProcessModel::white_noise();
    std::size_t length = 1;
    std::size_t replications = 1;
    std::uint64_t seed = 0;
    SimMethod method = SimMethod::CirculantEmbedding;
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Output never depends on it.
    unsigned threads = 0;
    /// MaTruncation: certified covariance error bound, relative to σ(0).
    double ma_cov_tol = 1e-6;
    std::size_t ma_max_terms = std::size_t{1} << 22;
};

/// Row-major R × n matrix, one replication per row.
struct PathMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data).subspan(i * cols, cols);
    }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Seed of the generator for one replication; a splitmix64 hash of (seed, replication).
[[nodiscard]] std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t replication) noexcept;

/**
 * Smallest M (doubling search) with σ(0)/σ_ε² - Σ_{j<=M-n+1} b_j² < tol · σ(0)/σ_ε²,
 * which bounds every lag < n of the truncated-MA covariance error by tol · σ(0).
 * @throws CertificationError if no M <= max_terms qualifies.
 */
[[nodiscard]] std::size_t ma_truncation_order(const ProcessModel& model, std::size_t n, double tol,
                                              std::size_t max_terms);

/**
 * @brief Draws Gaussian paths with covariance Toeplitz(σ(0..n-1)).
 *
 * Setup (eigenvalues of the circulant embedding, or the MA truncation) is done
 * once; sample() is thread-safe and depends only on (seed, replication).
 */
class PathSampler {
public:
    /// @throws NumericError if the embedding has an eigenvalue below -1e-10 σ(0).
    explicit PathSampler(const SimulationPlan& plan);
    ~PathSampler();
    PathSampler(const PathSampler&) = delete;
    PathSampler& operator=(const PathSampler&) = delete;

    void sample(std::uint64_t replication, std::span<double> out) const;

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    /// Truncation order M (MaTruncation only, 0 otherwise).
    [[nodiscard]] std::size_t ma_order() const noexcept { return ma_order_; }
    /// Smallest eigenvalue of the embedding before clamping (CirculantEmbedding only).
    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    struct Fft;

    SimMethod method_;
    std::size_t length_;
    std::uint64_t seed_;
    double noise_sd_ = 1.0;
    double sigma0_ = 0.0;
    std::vector<double> scale_;  // sqrt(λ_m / M)
    std::vector<double> ma_;     // b_0..b_M
    std::size_t ma_order_ = 0;
    double min_eigenvalue_ = 0.0;
    std::unique_ptr<Fft> fft_;
};

/// Calls body(i) for i in [0, count) on the plan's worker pool.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

[[nodiscard]] PathMatrix simulate(const SimulationPlan& plan);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t replications = 0;
};

/// Mean of a sample and its standard error s / sqrt(R), summed in index order.
[[nodiscard]] McEstimate summarize(std::span<const double> samples);

/**
 * Average squared error of forecasting X_{k+h} from X_1..X_k over the plan's replications.
 * @throws std::invalid_argument if plan.length < k + h.
 */
[[nodiscard]] McEstimate empirical_mse(const SimulationPlan& plan, const PredictorWeights& weights);

/// One replication per row, values with 17 significant digits.
void write_csv(std::ostream& out, const PathMatrix& paths, const SimulationPlan& plan);

}  // namespace lmp
