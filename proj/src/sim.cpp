#include "lmp/sim.hpp"

#include "lmp/csv.hpp"
#include "lmp/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

namespace lmp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Planning is not thread-safe in FFTW; execution on fresh arrays is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

void validate_plan(const SimulationPlan& plan) {
    if (plan.length == 0 || plan.replications == 0) {
        throw std::invalid_argument("simulation plan: length and replications must be at least 1");
    }
}

}  // namespace

std::string to_string(SimMethod method) {
    return method == SimMethod::CirculantEmbedding ? "circulant" : "ma_truncation";
}

std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t replication) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(replication + 0x632be59bd9b4e019ULL));
}

std::size_t ma_truncation_order(const ProcessModel& model, std::size_t n, double tol,
                                std::size_t max_terms) {
    const double var0 = acvf(model, 0)[0] / model.noise_variance();
    const double target = tol * var0;
    double tail = var0;
    std::size_t j_max = 256;
    while (true) {
        const std::size_t j = std::min(j_max, max_terms);
        const auto b = ma_coeffs(model, j);
        double s = 0.0;
        double c = 0.0;
        for (double v : b.values) {
            const double y = v * v - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        // Rounding of the partial sum and of σ(0) both count against the budget.
        tail = var0 - s + 1e-15 * var0 * static_cast<double>(j);
        if (tail < target) {
            return j + n - 1;
        }
        if (j >= max_terms) {
            break;
        }
        j_max *= 2;
    }
    throw CertificationError("ma_truncation_order: covariance tail " + std::to_string(tail) +
                                 " above tolerance within max_terms",
                             tail);
}

struct PathSampler::Fft {
    std::size_t size = 0;
    fftw_plan plan = nullptr;

    explicit Fft(std::size_t m) : size(m) {
        std::lock_guard lock(fftw_planner_mutex());
        auto* buf = fftw_alloc_complex(m);
        plan = fftw_plan_dft_1d(static_cast<int>(m), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_free(buf);
        if (plan == nullptr) {
            throw NumericError("PathSampler: FFT planning failed");
        }
    }
    ~Fft() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // In-place forward transform on an fftw_malloc'd buffer.
    void execute(fftw_complex* buf) const { fftw_execute_dft(plan, buf, buf); }
};

namespace {

struct ComplexBuffer {
    explicit ComplexBuffer(std::size_t n) : ptr(fftw_alloc_complex(n)) {
        if (ptr == nullptr) {
            throw std::bad_alloc();
        }
    }
    ~ComplexBuffer() { fftw_free(ptr); }
    ComplexBuffer(const ComplexBuffer&) = delete;
    ComplexBuffer& operator=(const ComplexBuffer&) = delete;
    fftw_complex* ptr;
};

}  // namespace

PathSampler::PathSampler(const SimulationPlan& plan)
    : method_(plan.method), length_(plan.length), seed_(plan.seed),
      noise_sd_(std::sqrt(plan.model.noise_variance())) {
    validate_plan(plan);
    const std::size_t n = plan.length;
    if (method_ == SimMethod::MaTruncation) {
        ma_order_ = ma_truncation_order(plan.model, n, plan.ma_cov_tol, plan.ma_max_terms);
        ma_ = ma_coeffs(plan.model, ma_order_).values;
        ma_.resize(ma_order_ + 1);
        return;
    }

    const auto sigma = acvf(plan.model, n - 1);
    sigma0_ = sigma[0];
    if (n == 1) {
        scale_ = {std::sqrt(sigma0_)};
        return;
    }
    const std::size_t m = 2 * (n - 1);
    fft_ = std::make_unique<Fft>(m);
    ComplexBuffer buf(m);
    for (std::size_t j = 0; j < m; ++j) {
        buf.ptr[j][0] = sigma[j < n ? j : m - j];
        buf.ptr[j][1] = 0.0;
    }
    fft_->execute(buf.ptr);
    scale_.resize(m);
    min_eigenvalue_ = buf.ptr[0][0];
    for (std::size_t j = 0; j < m; ++j) {
        const double lambda = buf.ptr[j][0];
        min_eigenvalue_ = std::min(min_eigenvalue_, lambda);
        if (lambda < -1e-10 * sigma0_) {
            throw NumericError("PathSampler: circulant embedding not nonnegative definite (eigenvalue " +
                               std::to_string(lambda) + ")");
        }
        scale_[j] = std::sqrt(std::max(lambda, 0.0) / static_cast<double>(m));
    }
}

PathSampler::~PathSampler() = default;

void PathSampler::sample(std::uint64_t replication, std::span<double> out) const {
    if (out.size() != length_) {
        throw std::invalid_argument("PathSampler::sample: output length differs from plan length");
    }
    std::mt19937_64 rng(replication_seed(seed_, replication));
    std::normal_distribution<double> normal;

    if (method_ == SimMethod::MaTruncation) {
        const std::size_t m = ma_order_;
        std::vector<double> eps(length_ + m);
        for (double& e : eps) {
            e = noise_sd_ * normal(rng);
        }
        // out[t] = Σ_j b_j eps[t + m - j]
        for (std::size_t t = 0; t < length_; ++t) {
            double acc = 0.0;
            for (std::size_t j = 0; j <= m; ++j) {
                acc += ma_[j] * eps[t + m - j];
            }
            out[t] = acc;
        }
        return;
    }

    if (length_ == 1) {
        out[0] = scale_[0] * normal(rng);
        return;
    }
    const std::size_t m = scale_.size();
    ComplexBuffer buf(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        buf.ptr[j][0] = scale_[j] * re;
        buf.ptr[j][1] = scale_[j] * im;
    }
    fft_->execute(buf.ptr);
    for (std::size_t t = 0; t < length_; ++t) {
        out[t] = buf.ptr[t][0];
    }
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
            next = count;
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

PathMatrix simulate(const SimulationPlan& plan) {
    const PathSampler sampler(plan);
    PathMatrix paths;
    paths.rows = plan.replications;
    paths.cols = plan.length;
    paths.data.resize(paths.rows * paths.cols);
    parallel_for(plan.replications, plan.threads, [&](std::size_t r) {
        sampler.sample(r, std::span<double>(paths.data).subspan(r * paths.cols, paths.cols));
    });
    return paths;
}

McEstimate summarize(std::span<const double> samples) {
    McEstimate est;
    est.replications = samples.size();
    if (samples.empty()) {
        return est;
    }
    double sum = 0.0;
    for (double x : samples) {
        sum += x;
    }
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double x : samples) {
            ss += (x - est.mean) * (x - est.mean);
        }
        const double var = ss / static_cast<double>(samples.size() - 1);
        est.std_error = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return est;
}

McEstimate empirical_mse(const SimulationPlan& plan, const PredictorWeights& weights) {
    if (weights.weights.size() != weights.k) {
        throw std::invalid_argument("empirical_mse: weight vector length differs from k");
    }
    if (plan.length < weights.k + weights.h) {
        throw std::invalid_argument("empirical_mse: path length must be at least k + h");
    }
    const PathSampler sampler(plan);
    std::vector<double> squared(plan.replications);
    parallel_for(plan.replications, plan.threads, [&](std::size_t r) {
        std::vector<double> path(plan.length);
        sampler.sample(r, path);
        const double pred = forecast(weights, std::span<const double>(path).first(weights.k));
        const double err = path[weights.k + weights.h - 1] - pred;
        squared[r] = err * err;
    });
    return summarize(squared);
}

void write_csv(std::ostream& out, const PathMatrix& paths, const SimulationPlan& plan) {
    csv::write_comment(out, plan.model.describe() + " method=" + to_string(plan.method) +
                                " seed=" + std::to_string(plan.seed));
    std::vector<std::string> header{"replication"};
    for (std::size_t t = 1; t <= paths.cols; ++t) {
        header.push_back("x" + std::to_string(t));
    }
    csv::write_header(out, header);
    for (std::size_t r = 0; r < paths.rows; ++r) {
        csv::Row row(out);
        row << static_cast<unsigned long long>(r);
        for (double x : paths.row(r)) {
            row << x;
        }
        row.end();
    }
}

}  // namespace lmp
