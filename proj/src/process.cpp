#include "lmp/process.hpp"

#include "lmp/csv.hpp"
#include "lmp/errors.hpp"
#include "lmp/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lmp {

namespace {

void check_memory_parameter(double d) {
    if (!(d > 0.0 && d < 0.5)) {
        throw InvalidModel("memory parameter d must lie in (0, 1/2), got " + csv::format_double(d));
    }
}

void check_noise_variance(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidModel("noise variance must be positive and finite, got " + csv::format_double(v));
    }
}

void check_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw InvalidModel(std::string(what) + " contains a non-finite coefficient");
        }
    }
}

// 1 - φ_1 z - ... - φ_p z^p
std::vector<double> ar_polynomial(const std::vector<double>& phi) {
    std::vector<double> poly(phi.size() + 1, 1.0);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        poly[i + 1] = -phi[i];
    }
    return poly;
}

// 1 + θ_1 z + ... + θ_q z^q
std::vector<double> ma_polynomial(const std::vector<double>& theta) {
    std::vector<double> poly(theta.size() + 1, 1.0);
    std::copy(theta.begin(), theta.end(), poly.begin() + 1);
    return poly;
}

std::vector<double> frac_ar(double d, std::size_t n) {
    std::vector<double> a(n + 1);
    a[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = static_cast<double>(j);
        a[j + 1] = a[j] * (jj - d) / (jj + 1.0);
    }
    return a;
}

std::vector<double> frac_ma(double d, std::size_t n) {
    std::vector<double> b(n + 1);
    b[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = static_cast<double>(j);
        b[j + 1] = b[j] * (jj + d) / (jj + 1.0);
    }
    return b;
}

// Autocovariance of F(d) with unit innovation variance.
std::vector<double> frac_acvf(double d, std::size_t n) {
    std::vector<double> s(n + 1);
    s[0] = gamma_ratio({1.0 - 2.0 * d}, {1.0 - d, 1.0 - d}).value();
    for (std::size_t j = 0; j < n; ++j) {
        const double jj = static_cast<double>(j);
        s[j + 1] = s[j] * (jj + d) / (jj + 1.0 - d);
    }
    return s;
}

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += csv::format_double(values[i]);
    }
    return out;
}

CoefSeq make_seq(CoefKind kind, const ProcessModel& model, std::vector<double> values) {
    CoefSeq seq;
    seq.kind = kind;
    seq.model = model;
    seq.values = std::move(values);
    return seq;
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::FracNoise: return "FracNoise";
        case ModelKind::Farima: return "Farima";
        case ModelKind::GenericMA: return "GenericMA";
    }
    return "unknown";
}

std::string to_string(CoefKind kind) {
    switch (kind) {
        case CoefKind::AR: return "ar";
        case CoefKind::MA: return "ma";
        case CoefKind::ACVF: return "acvf";
    }
    return "unknown";
}

ProcessModel ProcessModel::frac_noise(double d, double noise_variance) {
    check_memory_parameter(d);
    check_noise_variance(noise_variance);
    ProcessModel m;
    m.kind_ = ModelKind::FracNoise;
    m.d_ = d;
    m.noise_variance_ = noise_variance;
    return m;
}

ProcessModel ProcessModel::farima(double d, std::vector<double> ar_poly, std::vector<double> ma_poly,
                                  double noise_variance) {
    check_memory_parameter(d);
    check_noise_variance(noise_variance);
    check_finite(ar_poly, "ar_poly");
    check_finite(ma_poly, "ma_poly");
    if (!zeros_outside_unit_disk(ar_polynomial(ar_poly))) {
        throw InvalidModel("ar_poly has a zero in the closed unit disk");
    }
    if (!zeros_outside_unit_disk(ma_polynomial(ma_poly))) {
        throw InvalidModel("ma_poly has a zero in the closed unit disk");
    }
    ProcessModel m;
    m.kind_ = ModelKind::Farima;
    m.d_ = d;
    m.noise_variance_ = noise_variance;
    m.ar_poly_ = std::move(ar_poly);
    m.ma_poly_ = std::move(ma_poly);
    return m;
}

ProcessModel ProcessModel::generic_ma(std::vector<double> ma_coeffs, double noise_variance) {
    check_noise_variance(noise_variance);
    check_finite(ma_coeffs, "ma_coeffs");
    if (ma_coeffs.empty() || ma_coeffs.front() != 1.0) {
        throw InvalidModel("ma_coeffs must start with b_0 = 1");
    }
    while (ma_coeffs.size() > 1 && ma_coeffs.back() == 0.0) {
        ma_coeffs.pop_back();
    }
    ProcessModel m;
    m.kind_ = ModelKind::GenericMA;
    m.noise_variance_ = noise_variance;
    m.ma_stream_ = std::move(ma_coeffs);
    return m;
}

std::string ProcessModel::describe() const {
    std::string out = "model=" + to_string(kind_);
    if (kind_ != ModelKind::GenericMA) {
        out += " d=" + csv::format_double(d_);
    }
    out += " noise_variance=" + csv::format_double(noise_variance_);
    if (kind_ == ModelKind::Farima) {
        out += " ar_poly=" + join(ar_poly_) + " ma_poly=" + join(ma_poly_);
    }
    if (kind_ == ModelKind::GenericMA) {
        out += " ma_coeffs=" + join(ma_stream_);
    }
    return out;
}

void CoefSeq::extend(std::size_t n) {
    if (values.size() > n) {
        return;
    }
    const std::size_t last = offset + n;
    CoefSeq fresh;
    switch (kind) {
        case CoefKind::AR: fresh = ar_coeffs(model, last); break;
        case CoefKind::MA: fresh = ma_coeffs(model, last); break;
        case CoefKind::ACVF: fresh = acvf(model, last); break;
    }
    values.assign(fresh.values.begin() + static_cast<std::ptrdiff_t>(offset), fresh.values.end());
    certified_tol = std::max(certified_tol, fresh.certified_tol);
}

std::vector<double> series_divide(std::span<const double> num, std::span<const double> den,
                                  std::size_t n) {
    if (den.empty() || den[0] == 0.0) {
        throw std::invalid_argument("series_divide: leading denominator coefficient is zero");
    }
    std::vector<double> q(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        double acc = j < num.size() ? num[j] : 0.0;
        const std::size_t top = std::min(j, den.size() - 1);
        for (std::size_t i = 1; i <= top; ++i) {
            acc -= den[i] * q[j - i];
        }
        q[j] = acc / den[0];
    }
    return q;
}

std::vector<double> series_multiply(std::span<const double> lhs, std::span<const double> rhs,
                                    std::size_t n) {
    std::vector<double> out(n + 1, 0.0);
    if (rhs.empty()) {
        return out;
    }
    for (std::size_t i = 0; i < lhs.size() && i <= n; ++i) {
        if (lhs[i] == 0.0) {
            continue;
        }
        const std::size_t top = std::min(rhs.size() - 1, n - i);
        for (std::size_t j = 0; j <= top; ++j) {
            out[i + j] += lhs[i] * rhs[j];
        }
    }
    return out;
}

bool zeros_outside_unit_disk(std::span<const double> poly) {
    if (poly.empty() || poly[0] == 0.0) {
        return false;
    }
    std::vector<double> a(poly.begin(), poly.end());
    for (double& c : a) {
        c /= poly[0];
    }
    while (a.size() > 1 && a.back() == 0.0) {
        a.pop_back();
    }
    // Schur-Cohn step-down: all reflection coefficients must lie strictly inside (-1, 1).
    for (std::size_t m = a.size() - 1; m >= 1; --m) {
        const double k = a[m];
        if (!(std::abs(k) < 1.0)) {
            return false;
        }
        const double scale = 1.0 - k * k;
        std::vector<double> next(m);
        next[0] = 1.0;
        for (std::size_t i = 1; i < m; ++i) {
            next[i] = (a[i] - k * a[m - i]) / scale;
        }
        a = std::move(next);
    }
    return true;
}

CoefSeq ar_coeffs(const ProcessModel& model, std::size_t n) {
    switch (model.kind()) {
        case ModelKind::FracNoise:
            return make_seq(CoefKind::AR, model, frac_ar(model.d(), n));
        case ModelKind::Farima: {
            // (φ/θ) applied to the fractional stream: short product, then recursive division.
            const auto filtered = series_multiply(frac_ar(model.d(), n), ar_polynomial(model.ar_poly()), n);
            return make_seq(CoefKind::AR, model, series_divide(filtered, ma_polynomial(model.ma_poly()), n));
        }
        case ModelKind::GenericMA: {
            const auto& b = model.ma_stream();
            if (!zeros_outside_unit_disk(b)) {
                throw InvalidModel("moving-average stream is not invertible");
            }
            const std::vector<double> one{1.0};
            return make_seq(CoefKind::AR, model, series_divide(one, b, n));
        }
    }
    throw std::logic_error("ar_coeffs: unknown model kind");
}

CoefSeq ma_coeffs(const ProcessModel& model, std::size_t n) {
    switch (model.kind()) {
        case ModelKind::FracNoise:
            return make_seq(CoefKind::MA, model, frac_ma(model.d(), n));
        case ModelKind::Farima: {
            const auto filtered = series_multiply(frac_ma(model.d(), n), ma_polynomial(model.ma_poly()), n);
            return make_seq(CoefKind::MA, model, series_divide(filtered, ar_polynomial(model.ar_poly()), n));
        }
        case ModelKind::GenericMA: {
            std::vector<double> b(n + 1, 0.0);
            const auto& stream = model.ma_stream();
            std::copy_n(stream.begin(), std::min(stream.size(), n + 1), b.begin());
            return make_seq(CoefKind::MA, model, std::move(b));
        }
    }
    throw std::logic_error("ma_coeffs: unknown model kind");
}

namespace {

CoefSeq farima_acvf(const ProcessModel& model, std::size_t n, const AcvfOptions& options) {
    const auto phi = ar_polynomial(model.ar_poly());
    const auto theta = ma_polynomial(model.ma_poly());
    const double var = model.noise_variance();
    const double frac_var0 = frac_acvf(model.d(), 0)[0];

    // Grow the ARMA filter ψ = θ/φ until its geometric tail is negligible.
    std::vector<double> psi;
    double bound = std::numeric_limits<double>::infinity();
    std::size_t len = 64;
    for (;;) {
        psi = series_divide(theta, phi, len);
        double head = 0.0;
        double w1 = 0.0;
        double w2 = 0.0;
        for (std::size_t j = 0; j <= len; ++j) {
            const double a = std::abs(psi[j]);
            head += a;
            if (j >= len / 2 && j < 3 * len / 4) {
                w1 += a;
            } else if (j >= 3 * len / 4) {
                w2 += a;
            }
        }
        double tail = std::numeric_limits<double>::infinity();
        if (w2 == 0.0) {
            tail = 0.0;
        } else if (w2 < w1) {
            const double q = w2 / w1;
            tail = w2 * q / (1.0 - q);
        }
        // |σ(j) - σ_L(j)| <= σ_ε² ρ(0) ((A + t)^2 - A^2); σ(0) >= σ_ε² since b_0 = 1.
        bound = var * frac_var0 * (2.0 * head * tail + tail * tail);
        if (bound <= options.tol * var) {
            break;
        }
        if (len >= options.max_terms) {
            throw CertificationError("Farima autocovariance: ARMA filter tail not certified within "
                                         + std::to_string(options.max_terms) + " terms",
                                     bound);
        }
        len *= 2;
    }
    while (psi.size() > 1 && psi.back() == 0.0) {
        psi.pop_back();
    }
    const std::size_t filter = psi.size() - 1;

    std::vector<double> gamma_psi(filter + 1, 0.0);
    for (std::size_t u = 0; u <= filter; ++u) {
        double acc = 0.0;
        for (std::size_t s = 0; s + u <= filter; ++s) {
            acc += psi[s] * psi[s + u];
        }
        gamma_psi[u] = acc;
    }
    const auto frac = frac_acvf(model.d(), n + filter);
    std::vector<double> sigma(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        double acc = gamma_psi[0] * frac[j];
        for (std::size_t u = 1; u <= filter; ++u) {
            const std::size_t below = j >= u ? j - u : u - j;
            acc += gamma_psi[u] * (frac[j + u] + frac[below]);
        }
        sigma[j] = var * acc;
    }
    CoefSeq seq = make_seq(CoefKind::ACVF, model, std::move(sigma));
    seq.certified_tol = bound;
    return seq;
}

}  // namespace

CoefSeq acvf(const ProcessModel& model, std::size_t n, const AcvfOptions& options) {
    switch (model.kind()) {
        case ModelKind::FracNoise: {
            auto s = frac_acvf(model.d(), n);
            for (double& v : s) {
                v *= model.noise_variance();
            }
            return make_seq(CoefKind::ACVF, model, std::move(s));
        }
        case ModelKind::Farima:
            return farima_acvf(model, n, options);
        case ModelKind::GenericMA: {
            const auto& b = model.ma_stream();
            std::vector<double> s(n + 1, 0.0);
            for (std::size_t j = 0; j <= n && j < b.size(); ++j) {
                double acc = 0.0;
                for (std::size_t m = 0; m + j < b.size(); ++m) {
                    acc += b[m] * b[m + j];
                }
                s[j] = model.noise_variance() * acc;
            }
            return make_seq(CoefKind::ACVF, model, std::move(s));
        }
    }
    throw std::logic_error("acvf: unknown model kind");
}

double decay_exponent(CoefKind kind, double d) noexcept {
    switch (kind) {
        case CoefKind::AR: return -d - 1.0;
        case CoefKind::MA: return d - 1.0;
        case CoefKind::ACVF: return 2.0 * d - 1.0;
    }
    return 0.0;
}

DecayReport verify_decay(const CoefSeq& seq, double delta) {
    if (seq.size() < 50) {
        throw std::invalid_argument("verify_decay: need at least 50 values");
    }
    if (!(delta > 0.0)) {
        throw std::invalid_argument("verify_decay: delta must be positive");
    }
    DecayReport report;
    report.target_exponent = decay_exponent(seq.kind, seq.model.d());
    const double bound_exponent = report.target_exponent + delta;

    for (std::size_t i = 0; i < seq.size(); ++i) {
        const double j = static_cast<double>(seq.offset + i);
        if (j < 1.0) {
            continue;
        }
        report.max_constant =
            std::max(report.max_constant, std::abs(seq[i]) / std::pow(j, bound_exponent));
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t i = seq.size() / 2; i < seq.size(); ++i) {
        const double j = static_cast<double>(seq.offset + i);
        if (j < 1.0 || seq[i] == 0.0) {
            continue;
        }
        const double x = std::log(j);
        const double y = std::log(std::abs(seq[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count == 0) {
        report.zero_tail = true;
        report.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    const double c = static_cast<double>(count);
    const double denom = c * sxx - sx * sx;
    report.fitted_exponent =
        denom > 0.0 ? (c * sxy - sx * sy) / denom : std::numeric_limits<double>::quiet_NaN();
    return report;
}

void write_csv(std::ostream& out, const CoefSeq& seq) {
    csv::write_comment(out, "kind=" + to_string(seq.kind) + " offset=" + std::to_string(seq.offset)
                                + " certified_tol=" + csv::format_double(seq.certified_tol) + " "
                                + seq.model.describe());
    csv::write_header(out, {"j", to_string(seq.kind)});
    for (std::size_t i = 0; i < seq.size(); ++i) {
        csv::Row row(out);
        row << static_cast<unsigned long long>(seq.offset + i) << seq[i];
        row.end();
    }
}

}  // namespace lmp
