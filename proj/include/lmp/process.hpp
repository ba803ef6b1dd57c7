#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lmp {

enum class ModelKind { FracNoise, Farima, GenericMA };

[[nodiscard]] std::string to_string(ModelKind kind);

/**
 * @brief A zero-mean stationary linear process X_n = Σ b_j ε_{n-j}.
 *
 * - FracNoise: (1 - B)^d X_n = ε_n.
 * - Farima:    φ(B) (1 - B)^d X_n = θ(B) ε_n with
 *              φ(z) = 1 - φ_1 z - ... - φ_p z^p and θ(z) = 1 + θ_1 z + ... + θ_q z^q.
 * - GenericMA: a finite moving-average stream b_0 = 1, b_1, ..., b_q.
 *
 * Construction validates 0 < d < 1/2 (FracNoise, Farima), σ_ε² > 0 and, for
 * Farima, that φ and θ have no zeroes in the closed unit disk.
 */
class ProcessModel {
public:
    [[nodiscard]] static ProcessModel frac_noise(double d, double noise_variance = 1.0);
    [[nodiscard]] static ProcessModel farima(double d, std::vector<double> ar_poly,
                                             std::vector<double> ma_poly,
                                             double noise_variance = 1.0);
    [[nodiscard]] static ProcessModel generic_ma(std::vector<double> ma_coeffs,
                                                 double noise_variance = 1.0);
    [[nodiscard]] static ProcessModel white_noise(double noise_variance = 1.0) {
        return generic_ma({1.0}, noise_variance);
    }

    [[nodiscard]] ModelKind kind() const noexcept { return kind_; }
    /// Memory parameter; 0 for GenericMA.
    [[nodiscard]] double d() const noexcept { return d_; }
    [[nodiscard]] double noise_variance() const noexcept { return noise_variance_; }
    [[nodiscard]] const std::vector<double>& ar_poly() const noexcept { return ar_poly_; }
    [[nodiscard]] const std::vector<double>& ma_poly() const noexcept { return ma_poly_; }
    [[nodiscard]] const std::vector<double>& ma_stream() const noexcept { return ma_stream_; }

    /// One-line "key=value ..." description used in CSV comment headers.
    [[nodiscard]] std::string describe() const;

private:
    ProcessModel() = default;

    ModelKind kind_ = ModelKind::FracNoise;
    double d_ = 0.0;
    double noise_variance_ = 1.0;
    std::vector<double> ar_poly_;
    std::vector<double> ma_poly_;
    std::vector<double> ma_stream_;
};

enum class CoefKind { AR, MA, ACVF };

[[nodiscard]] std::string to_string(CoefKind kind);

/**
 * @brief A computed prefix of a coefficient sequence of a model.
 *
 * values[i] holds the coefficient of index offset + i. AR and MA sequences
 * with offset 0 start with 1. certified_tol bounds the absolute error of every
 * entry (0 when the entries are exact up to rounding).
 */
struct CoefSeq {
    CoefKind kind = CoefKind::AR;
    ProcessModel model = ProcessModel::white_noise();
    std::size_t offset = 0;
    std::vector<double> values;
    double certified_tol = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values[i]; }
    [[nodiscard]] std::span<const double> span() const noexcept { return values; }

    /// Grows the prefix so that at least n + 1 values are present; existing values are unchanged.
    void extend(std::size_t n);
};

/// (a_0, ..., a_n) of ε_n = Σ a_j X_{n-j}.
[[nodiscard]] CoefSeq ar_coeffs(const ProcessModel& model, std::size_t n);

/// (b_0, ..., b_n) of X_n = Σ b_j ε_{n-j}.
[[nodiscard]] CoefSeq ma_coeffs(const ProcessModel& model, std::size_t n);

struct AcvfOptions {
    /// Certified absolute error target, relative to σ(0).
    double tol = 1e-10;
    /// Upper limit on the short-memory filter length used for Farima.
    std::size_t max_terms = std::size_t{1} << 20;
};

/**
 * @brief Autocovariances σ(0), ..., σ(n).
 *
 * FracNoise uses the exact ratio recursion. Farima convolves the F(d)
 * autocovariance with the autocovariance of the ARMA filter θ/φ, truncated
 * where a geometric tail estimate falls below tol·σ(0). GenericMA is exact.
 * @throws CertificationError if the tolerance cannot be reached within max_terms.
 */
[[nodiscard]] CoefSeq acvf(const ProcessModel& model, std::size_t n, const AcvfOptions& options = {});

struct DecayReport {
    double fitted_exponent = 0.0;  // NaN when zero_tail
    double target_exponent = 0.0;
    double max_constant = 0.0;
    bool zero_tail = false;
};

/// Exponent p of the decay bound for a sequence kind: -d-1 (AR), d-1 (MA), 2d-1 (ACVF).
[[nodiscard]] double decay_exponent(CoefKind kind, double d) noexcept;

/**
 * Fits log|v_j| against log j over the second half of the sequence and reports
 * the smallest C with |v_j| <= C j^(p + delta) over the computed range (j >= 1).
 * Requires at least 50 values.
 */
[[nodiscard]] DecayReport verify_decay(const CoefSeq& seq, double delta);

/// First n + 1 coefficients of the power series num(z) / den(z); den[0] must be nonzero.
[[nodiscard]] std::vector<double> series_divide(std::span<const double> num,
                                                std::span<const double> den, std::size_t n);

/// Coefficients c_0..c_n of the product of two power series, truncated at degree n.
[[nodiscard]] std::vector<double> series_multiply(std::span<const double> lhs,
                                                  std::span<const double> rhs, std::size_t n);

/// True if the polynomial c_0 + c_1 z + ... + c_p z^p (c_0 != 0) has all zeroes strictly outside |z| = 1.
[[nodiscard]] bool zeros_outside_unit_disk(std::span<const double> poly);

/// CSV dump: comment line with model parameters, header "j,<kind>", one row per index.
void write_csv(std::ostream& out, const CoefSeq& seq);

}  // namespace lmp
