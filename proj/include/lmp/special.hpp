#pragma once

#include <initializer_list>
#include <span>

namespace lmp {

/**
 * @brief A real number stored as (ln|x|, sign(x)).
 *
 * Products and quotients of Gamma values are formed in this representation so
 * that intermediate magnitudes such as Γ(4096) never have to be materialized.
 * When sign == 0 the value is exactly zero and log_magnitude is ignored.
 */
struct SignedLogValue {
    double log_magnitude = 0.0;
    int sign = 0;

    [[nodiscard]] static SignedLogValue from_value(double x) noexcept;
    [[nodiscard]] static SignedLogValue one() noexcept { return {0.0, 1}; }

    /// Materializes the value; overflows to ±inf / underflows to ±0 like std::exp.
    [[nodiscard]] double value() const noexcept;

    [[nodiscard]] bool is_zero() const noexcept { return sign == 0; }

    SignedLogValue& operator*=(const SignedLogValue& rhs) noexcept;
    SignedLogValue& operator/=(const SignedLogValue& rhs);
};

[[nodiscard]] SignedLogValue operator*(SignedLogValue lhs, const SignedLogValue& rhs) noexcept;
[[nodiscard]] SignedLogValue operator/(SignedLogValue lhs, const SignedLogValue& rhs);

/// sin(pi * x) with exact argument reduction.
[[nodiscard]] double sin_pi(double x) noexcept;

/**
 * @brief ln|Γ(x)| together with the sign of Γ(x).
 *
 * Shifted Stirling series for x >= 0.5, reflection below. The error of
 * exp(log_magnitude) relative to |Γ(x)| stays below 1e-13 for |x| <= 50.
 * @throws PoleError if x is zero or a negative integer.
 */
[[nodiscard]] SignedLogValue log_gamma(double x);

/// Π Γ(num_i) / Π Γ(den_j), evaluated in log space.
[[nodiscard]] SignedLogValue gamma_ratio(std::span<const double> num, std::span<const double> den);
[[nodiscard]] SignedLogValue gamma_ratio(std::initializer_list<double> num,
                                         std::initializer_list<double> den);

}  // namespace lmp
