#include "lmp/mse.hpp"

#include "lmp/csv.hpp"
#include "lmp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lmp {

namespace {

// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double abs_sum(std::span<const double> w) {
    double s = 0.0;
    for (double x : w) {
        s += std::abs(x);
    }
    return s;
}

// Solves a small dense system in place by Gaussian elimination with partial pivoting.
template <std::size_t N>
std::array<double, N> solve_dense(std::array<std::array<double, N>, N> m, std::array<double, N> rhs) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < N; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < N; ++r) {
            const double f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < N; ++c) {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    std::array<double, N> x{};
    for (std::size_t i = N; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t c = i + 1; c < N; ++c) {
            acc -= m[i][c] * x[c];
        }
        x[i] = acc / m[i][i];
    }
    return x;
}

// S(N_i) = S_inf - Σ_{r<L-1} c_r N_i^{2d-1-r}, using the last L partial sums.
template <std::size_t L>
double extrapolate_limit(const std::array<double, 4>& partial, const std::array<double, 4>& x,
                         double d) {
    std::array<std::array<double, L>, L> m{};
    std::array<double, L> rhs{};
    for (std::size_t i = 0; i < L; ++i) {
        const std::size_t level = 4 - L + i;
        m[i][0] = 1.0;
        for (std::size_t r = 1; r < L; ++r) {
            m[i][r] = -std::pow(x[level], 2.0 * d - static_cast<double>(r));
        }
        rhs[i] = partial[level];
    }
    return solve_dense<L>(m, rhs)[0];
}

// Σ_{j,l} w_j w_l σ(j-l)
double toeplitz_quadratic(std::span<const double> acvf, std::span<const double> w) {
    const std::size_t k = w.size();
    double diag = 0.0;
    for (double x : w) {
        diag += x * x;
    }
    double off = 0.0;
    for (std::size_t m = 1; m < k; ++m) {
        double lag = 0.0;
        for (std::size_t j = 0; j + m < k; ++j) {
            lag += w[j] * w[j + m];
        }
        off += acvf[m] * lag;
    }
    return acvf[0] * diag + 2.0 * off;
}

}  // namespace

std::string to_string(MseMethod method) {
    switch (method) {
        case MseMethod::TruncatedWK: return "truncated_wk";
        case MseMethod::Projection: return "projection";
        case MseMethod::InfinitePast: return "infinite_past";
    }
    return "unknown";
}

MseMethod to_mse_method(PredictorMethod method) noexcept {
    return method == PredictorMethod::Projection ? MseMethod::Projection : MseMethod::TruncatedWK;
}

double prediction_quadratic_form(std::span<const double> acvf, std::span<const double> weights,
                                 std::size_t h) {
    const std::size_t k = weights.size();
    if (h == 0) {
        throw std::invalid_argument("prediction_quadratic_form: h must be at least 1");
    }
    if (acvf.size() < k + h) {
        throw std::invalid_argument("prediction_quadratic_form: need autocovariances up to lag k + h - 1");
    }
    double cross = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
        cross += weights[j - 1] * acvf[h - 1 + j];
    }
    return acvf[0] - 2.0 * cross + toeplitz_quadratic(acvf, weights);
}

double h_step_floor(const CoefSeq& ma, std::size_t h) {
    if (ma.kind != CoefKind::MA || ma.offset != 0 || ma.size() < h) {
        throw std::invalid_argument("h_step_floor: need b_0..b_{h-1}");
    }
    CompensatedSum s;
    for (std::size_t l = 0; l < h; ++l) {
        s.add(ma[l] * ma[l]);
    }
    return ma.model.noise_variance() * s.value();
}

MseReport mse_of_weights(const CoefSeq& acvf, const CoefSeq& ma, const PredictorWeights& weights) {
    if (acvf.kind != CoefKind::ACVF || acvf.offset != 0) {
        throw std::invalid_argument("mse_of_weights: expects an autocovariance sequence");
    }
    if (weights.weights.size() != weights.k) {
        throw std::invalid_argument("mse_of_weights: weight vector length differs from k");
    }
    MseReport report;
    report.method = to_mse_method(weights.method);
    report.d = acvf.model.d();
    report.k = weights.k;
    report.h = weights.h;
    report.total = prediction_quadratic_form(acvf.span(), weights.weights, weights.h);
    report.floor = h_step_floor(ma, weights.h);
    report.excess = report.total - report.floor;
    const double spread = 1.0 + abs_sum(weights.weights);
    report.certified_tol = acvf.certified_tol * spread * spread;
    return report;
}

MseReport mse_of_weights(const ProcessModel& model, const PredictorWeights& weights) {
    const auto sigma = acvf(model, weights.k + weights.h - 1);
    const auto b = ma_coeffs(model, weights.h - 1);
    return mse_of_weights(sigma, b, weights);
}

MseReport infinite_past_mse(const CoefSeq& ma, std::size_t h) {
    if (h == 0) {
        throw std::invalid_argument("infinite_past_mse: h must be at least 1");
    }
    MseReport report;
    report.method = MseMethod::InfinitePast;
    report.d = ma.model.d();
    report.h = h;
    report.floor = h_step_floor(ma, h);
    report.total = report.floor;
    return report;
}

MseReport infinite_past_mse(const ProcessModel& model, std::size_t h) {
    if (h == 0) {
        throw std::invalid_argument("infinite_past_mse: h must be at least 1");
    }
    return infinite_past_mse(ma_coeffs(model, h - 1), h);
}

SpectralContrast spectral_contrast_mse(const ProcessModel& model, const FittedAr& fit,
                                       std::size_t n_terms) {
    if (n_terms < 64) {
        throw std::invalid_argument("spectral_contrast_mse: n_terms must be at least 64");
    }
    const auto b = ma_coeffs(model, n_terms);
    const auto& phi = fit.a_fit;
    const std::size_t k = fit.order;
    const double var = model.noise_variance();

    // For a finite MA stream t_j vanishes beyond q + k.
    const bool finite_support = model.kind() == ModelKind::GenericMA;
    const std::size_t support_end = finite_support ? model.ma_stream().size() - 1 + k : n_terms;

    const std::array<std::size_t, 4> levels = {n_terms / 8, n_terms / 4, n_terms / 2, n_terms};
    std::array<double, 4> partial{};
    CompensatedSum sum;
    std::size_t next_level = 0;
    for (std::size_t j = 0; j <= n_terms; ++j) {
        double t = 0.0;
        const std::size_t top = std::min(j, k);
        for (std::size_t m = 0; m <= top; ++m) {
            t += phi[m] * b[j - m];
        }
        sum.add(t * t);
        while (next_level < levels.size() && levels[next_level] == j) {
            partial[next_level++] = sum.value();
        }
    }

    SpectralContrast result;
    if (finite_support && support_end <= n_terms) {
        result.value = var * partial[3];
        return result;
    }
    const double n = static_cast<double>(n_terms);
    std::array<double, 4> x{};
    for (std::size_t i = 0; i < 4; ++i) {
        x[i] = static_cast<double>(levels[i]) / n;
    }
    const double d = model.d();
    const double limit4 = extrapolate_limit<4>(partial, x, d);
    const double limit3 = extrapolate_limit<3>(partial, x, d);
    result.value = var * limit4;
    result.tail = var * (limit4 - partial[3]);
    result.error_bound = var * std::abs(limit4 - limit3);
    if (!(result.error_bound <= 1e-8 * std::abs(result.value))) {
        throw CertificationError("spectral_contrast_mse: tail extrapolation not certified; increase n_terms",
                                 result.error_bound);
    }
    return result;
}

ErrorDecomposition error_decomposition(const ProcessModel& model, std::size_t k) {
    if (model.kind() != ModelKind::FracNoise) {
        throw InvalidModel("error_decomposition: requires a fractionally integrated noise model");
    }
    if (k == 0) {
        throw std::invalid_argument("error_decomposition: k must be at least 1");
    }
    const auto a = ar_coeffs(model, k);
    const auto sigma = acvf(model, k);
    const auto fit = closed_form_ar_fit(model.d(), k, model.noise_variance());

    // tail[j] = Σ_{l>k} a_l σ(j-l), j = 0..k
    std::vector<double> tail(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        CompensatedSum head;
        for (std::size_t l = 0; l <= k; ++l) {
            head.add(a[l] * sigma[j > l ? j - l : l - j]);
        }
        tail[j] = (j == 0 ? model.noise_variance() : 0.0) - head.value();
    }
    std::vector<double> delta(k + 1, 0.0);
    for (std::size_t j = 1; j <= k; ++j) {
        delta[j] = fit.a_fit[j] - a[j];
    }

    ErrorDecomposition out;
    const std::span<const double> dv(delta.data() + 1, k);
    out.term_quad = -toeplitz_quadratic(sigma.span(), dv);
    CompensatedSum cross;
    CompensatedSum trunc;
    for (std::size_t j = 0; j <= k; ++j) {
        cross.add(delta[j] * tail[j]);
        trunc.add(a[j] * tail[j]);
    }
    out.term_cross = 2.0 * cross.value();
    out.term_trunc = trunc.value();
    if (!(out.term_quad < 0.0 && out.term_cross > 0.0 && out.term_trunc < 0.0)) {
        throw NumericError("error_decomposition: sign pattern (-, +, -) violated at k = "
                           + std::to_string(k));
    }
    return out;
}

void write_csv_header(std::ostream& out) {
    csv::write_header(out, {"method", "d", "k", "h", "total", "floor", "excess", "certified_tol"});
}

void write_csv_row(std::ostream& out, const MseReport& report) {
    csv::Row row(out);
    row << to_string(report.method) << report.d << static_cast<unsigned long long>(report.k)
        << static_cast<unsigned long long>(report.h) << report.total << report.floor << report.excess
        << report.certified_tol;
    row.end();
}

}  // namespace lmp
