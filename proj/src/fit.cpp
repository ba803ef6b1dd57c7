#include "lmp/fit.hpp"

#include "lmp/csv.hpp"
#include "lmp/errors.hpp"
#include "lmp/special.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace lmp {

namespace {

void check_variance(double err, double floor, std::size_t step) {
    if (!(err > 0.0)) {
        throw NumericError("Levinson recursion: covariance is not positive definite (variance iterate "
                           + csv::format_double(err) + " at order " + std::to_string(step) + ")");
    }
    if (err < floor) {
        throw NumericError("Levinson recursion: variance iterate " + csv::format_double(err)
                           + " fell below the precision floor " + csv::format_double(floor)
                           + " at order " + std::to_string(step));
    }
}

// One Durbin step: phi (order m-1, 1-based in phi[0..m-2]) -> order m. Returns the new variance.
double durbin_step(std::span<const double> r, std::vector<double>& phi, double err, std::size_t m) {
    double num = r[m];
    for (std::size_t i = 1; i < m; ++i) {
        num -= phi[i - 1] * r[m - i];
    }
    const double kappa = num / err;
    std::vector<double> next(m);
    for (std::size_t i = 1; i < m; ++i) {
        next[i - 1] = phi[i - 1] - kappa * phi[m - i - 1];
    }
    next[m - 1] = kappa;
    phi = std::move(next);
    return err * (1.0 - kappa * kappa);
}

double variance_floor_for(const CoefSeq& acvf) {
    return kVarianceFloorFraction * acvf.model.noise_variance();
}

}  // namespace

PredictorWeights FittedAr::as_weights() const {
    return PredictorWeights{phi, order, 1, PredictorMethod::Projection};
}

std::vector<double> solve_levinson(const ToeplitzSystem& system, double variance_floor) {
    const std::size_t k = system.order();
    if (k == 0) {
        return {};
    }
    if (system.first_row.size() < k) {
        throw std::invalid_argument("solve_levinson: first_row shorter than the system order");
    }
    const std::span<const double> r(system.first_row);
    double err = r[0];
    check_variance(err, variance_floor, 0);

    std::vector<double> x{system.rhs[0] / r[0]};
    std::vector<double> phi;
    x.reserve(k);
    for (std::size_t m = 1; m < k; ++m) {
        err = durbin_step(r, phi, err, m);
        check_variance(err, variance_floor, m);
        double mu = system.rhs[m];
        for (std::size_t i = 0; i < m; ++i) {
            mu -= r[m - i] * x[i];
        }
        mu /= err;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] -= mu * phi[m - i - 1];
        }
        x.push_back(mu);
    }
    return x;
}

double toeplitz_residual(const ToeplitzSystem& system, std::span<const double> x) {
    const std::size_t k = system.order();
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double acc = -system.rhs[i];
        for (std::size_t j = 0; j < k; ++j) {
            acc += system.first_row[i > j ? i - j : j - i] * x[j];
        }
        worst = std::max(worst, std::abs(acc));
    }
    return worst;
}

FittedAr yule_walker(std::span<const double> acvf, std::size_t k, double variance_floor) {
    if (k == 0) {
        throw std::invalid_argument("yule_walker: order must be at least 1");
    }
    if (acvf.size() < k + 1) {
        throw std::invalid_argument("yule_walker: need autocovariances up to lag k");
    }
    double err = acvf[0];
    check_variance(err, variance_floor, 0);
    std::vector<double> phi;
    phi.reserve(k);
    for (std::size_t m = 1; m <= k; ++m) {
        err = durbin_step(acvf, phi, err, m);
        check_variance(err, variance_floor, m);
    }
    FittedAr fit;
    fit.order = k;
    fit.a_fit.assign(k + 1, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        fit.a_fit[j + 1] = -phi[j];
    }
    fit.phi = std::move(phi);
    fit.innovation_variance = err;
    return fit;
}

FittedAr yule_walker(const CoefSeq& acvf, std::size_t k) {
    if (acvf.kind != CoefKind::ACVF || acvf.offset != 0) {
        throw std::invalid_argument("yule_walker: expects an autocovariance sequence");
    }
    return yule_walker(acvf.span(), k, variance_floor_for(acvf));
}

FittedAr closed_form_ar_fit(double d, std::size_t k, double noise_variance) {
    if (!(d > 0.0 && d < 0.5)) {
        throw InvalidModel("closed_form_ar_fit: d must lie in (0, 1/2)");
    }
    if (k == 0) {
        throw std::invalid_argument("closed_form_ar_fit: order must be at least 1");
    }
    const double kk = static_cast<double>(k);
    FittedAr fit;
    fit.order = k;
    fit.phi.resize(k);
    fit.a_fit.assign(k + 1, 1.0);
    double a_j = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double jj = static_cast<double>(j);
        a_j *= (jj - 1.0 - d) / jj;
        const double a_jk = gamma_ratio({jj - d, kk + 1.0, kk - d - jj + 1.0},
                                        {jj + 1.0, -d, kk - jj + 1.0, kk - d + 1.0})
                                .value();
        if (!(a_j - a_jk > 0.0)) {
            throw NumericError("closed_form_ar_fit: expected a_j - a_{j,k} > 0 at j = "
                               + std::to_string(j));
        }
        fit.a_fit[j] = a_jk;
        fit.phi[j - 1] = -a_jk;
    }
    fit.innovation_variance =
        noise_variance * gamma_ratio({kk + 1.0, kk + 1.0 - 2.0 * d}, {kk + 1.0 - d, kk + 1.0 - d}).value();
    return fit;
}

PredictorWeights projection_weights(const CoefSeq& acvf, std::size_t k, std::size_t h) {
    if (k == 0 || h == 0) {
        throw std::invalid_argument("projection_weights: k and h must be at least 1");
    }
    if (acvf.kind != CoefKind::ACVF || acvf.offset != 0) {
        throw std::invalid_argument("projection_weights: expects an autocovariance sequence");
    }
    if (acvf.size() < k + h) {
        throw std::invalid_argument("projection_weights: need autocovariances up to lag k + h - 1");
    }
    ToeplitzSystem system;
    system.first_row.assign(acvf.values.begin(), acvf.values.begin() + static_cast<std::ptrdiff_t>(k));
    system.rhs.assign(acvf.values.begin() + static_cast<std::ptrdiff_t>(h),
                      acvf.values.begin() + static_cast<std::ptrdiff_t>(h + k));
    auto w = solve_levinson(system, variance_floor_for(acvf));
    const double residual = toeplitz_residual(system, w);
    if (!(residual <= 1e-8 * acvf[0])) {
        throw NumericError("projection_weights: Toeplitz residual " + csv::format_double(residual)
                           + " exceeds 1e-8 sigma(0)");
    }
    return PredictorWeights{std::move(w), k, h, PredictorMethod::Projection};
}

void write_csv(std::ostream& out, const FittedAr& fit, const ProcessModel& model) {
    csv::write_comment(out, "yule_walker order=" + std::to_string(fit.order) + " innovation_variance="
                                + csv::format_double(fit.innovation_variance) + " " + model.describe());
    csv::write_header(out, {"j", "phi", "a_fit"});
    for (std::size_t j = 0; j <= fit.order; ++j) {
        csv::Row row(out);
        row << static_cast<unsigned long long>(j) << (j == 0 ? 0.0 : fit.phi[j - 1]) << fit.a_fit[j];
        row.end();
    }
}

}  // namespace lmp
