#include "lmp/special.hpp"

#include "lmp/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lmp {

namespace {

constexpr double kStirlingThreshold = 15.0;

// B_{2n} / (2n (2n-1)) for n = 1..8
constexpr std::array<double, 8> kStirlingCoefficients = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

double log_gamma_stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    for (auto it = kStirlingCoefficients.rbegin(); it != kStirlingCoefficients.rend(); ++it) {
        series = series * inv2 + *it;
    }
    series *= inv;
    constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

// ln Γ(x) for x >= 0.5: shift upwards with Γ(x) = Γ(x+n) / (x (x+1) ... (x+n-1)).
double log_gamma_positive(double x) {
    if (x >= kStirlingThreshold) {
        return log_gamma_stirling(x);
    }
    double product = 1.0;
    double shifted = x;
    while (shifted < kStirlingThreshold) {
        product *= shifted;
        shifted += 1.0;
    }
    return log_gamma_stirling(shifted) - std::log(product);
}

bool is_non_positive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace

SignedLogValue SignedLogValue::from_value(double x) noexcept {
    if (x == 0.0) {
        return {0.0, 0};
    }
    return {std::log(std::abs(x)), x > 0.0 ? 1 : -1};
}

double SignedLogValue::value() const noexcept {
    if (sign == 0) {
        return 0.0;
    }
    return static_cast<double>(sign) * std::exp(log_magnitude);
}

SignedLogValue& SignedLogValue::operator*=(const SignedLogValue& rhs) noexcept {
    sign *= rhs.sign;
    log_magnitude = sign == 0 ? 0.0 : log_magnitude + rhs.log_magnitude;
    return *this;
}

SignedLogValue& SignedLogValue::operator/=(const SignedLogValue& rhs) {
    if (rhs.sign == 0) {
        throw std::domain_error("SignedLogValue: division by zero");
    }
    sign *= rhs.sign;
    log_magnitude = sign == 0 ? 0.0 : log_magnitude - rhs.log_magnitude;
    return *this;
}

SignedLogValue operator*(SignedLogValue lhs, const SignedLogValue& rhs) noexcept {
    lhs *= rhs;
    return lhs;
}

SignedLogValue operator/(SignedLogValue lhs, const SignedLogValue& rhs) {
    lhs /= rhs;
    return lhs;
}

double sin_pi(double x) noexcept {
    // r in [-1, 1]; the subtraction is exact in binary floating point.
    double r = x - 2.0 * std::nearbyint(0.5 * x);
    double sign = 1.0;
    if (r < 0.0) {
        r = -r;
        sign = -1.0;
    }
    if (r > 0.5) {
        r = 1.0 - r;
    }
    return sign * std::sin(std::numbers::pi * r);
}

SignedLogValue log_gamma(double x) {
    if (std::isnan(x)) {
        throw std::domain_error("log_gamma: NaN argument");
    }
    if (is_non_positive_integer(x)) {
        throw PoleError("log_gamma: pole at x = " + std::to_string(x));
    }
    if (x >= 0.5) {
        return {log_gamma_positive(x), 1};
    }
    // Reflection: Γ(x) Γ(1-x) = π / sin(πx); Γ(1-x) > 0 here.
    const double s = sin_pi(x);
    return {std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma_positive(1.0 - x),
            s > 0.0 ? 1 : -1};
}

SignedLogValue gamma_ratio(std::span<const double> num, std::span<const double> den) {
    SignedLogValue result = SignedLogValue::one();
    for (double x : num) {
        result *= log_gamma(x);
    }
    for (double x : den) {
        result /= log_gamma(x);
    }
    return result;
}

SignedLogValue gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    return gamma_ratio(std::span<const double>(num.begin(), num.size()),
                       std::span<const double>(den.begin(), den.size()));
}

}  // namespace lmp
