#pragma once

#include <stdexcept>
#include <string>

namespace lmp {

/// Model parameters outside the admissible range (d, noise variance, polynomial roots).
class InvalidModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A computation could not deliver a trustworthy result (non positive definite
/// input, precision floor reached, negative circulant eigenvalue, ...).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncated series could not be certified below the requested tolerance.
class CertificationError : public NumericError {
public:
    CertificationError(const std::string& what, double achieved_bound)
        : NumericError(what), achieved_bound_(achieved_bound) {}

    [[nodiscard]] double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double achieved_bound_;
};

}  // namespace lmp
