#include <doctest.h>

#include "support/oracles.hpp"

#include <lmp/csv.hpp>
#include <lmp/errors.hpp>
#include <lmp/fit.hpp>
#include <lmp/mse.hpp>

#include <cmath>
#include <sstream>

using lmp::ProcessModel;

namespace {

// Σ_{i,j=0}^{k} a_i a_j σ(i-j) in long double.
long double operator_form(const lmp::CoefSeq& a, const lmp::CoefSeq& s, std::size_t k) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i <= k; ++i) {
        for (std::size_t j = 0; j <= k; ++j) {
            sum += static_cast<long double>(a[i]) * a[j] * s[i > j ? i - j : j - i];
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("one-step truncated MSE as an operator form") {
    const auto m = ProcessModel::frac_noise(0.3, 1.7);
    const std::size_t k = 40;
    const auto r = lmp::mse_of_weights(m, lmp::truncated_wk_weights(m, k, 1));
    const auto ref = operator_form(lmp::ar_coeffs(m, k), lmp::acvf(m, k), k);
    CHECK(r.total == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
    CHECK(r.floor == doctest::Approx(1.7).epsilon(1e-15));
    CHECK(r.total == doctest::Approx(r.floor + r.excess).epsilon(1e-12));

    const auto wn = ProcessModel::white_noise(0.8);
    const auto rw = lmp::mse_of_weights(wn, lmp::truncated_wk_weights(wn, 5, 1));
    CHECK(rw.total == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(rw.excess == 0.0);
}

TEST_CASE("order-one projection by hand") {
    const auto m = ProcessModel::frac_noise(0.4);
    const auto s = lmp::acvf(m, 1);
    const auto r = lmp::mse_of_weights(m, lmp::projection_weights(s, 1, 1));
    CHECK(r.total == doctest::Approx(s[0] * 5.0 / 9.0).epsilon(1e-14));
    CHECK(r.method == lmp::MseMethod::Projection);
}

TEST_CASE("truncation excess equals the double tail sum") {
    const auto m = ProcessModel::frac_noise(0.3);
    const auto r = lmp::mse_of_weights(m, lmp::truncated_wk_weights(m, 50, 1));
    const double tail = oracle::truncation_tail_sum(0.3, 50, std::size_t{1} << 20);
    CHECK(r.excess == doctest::Approx(tail).epsilon(1e-6));
}

TEST_CASE("infinite-past MSE") {
    const auto m = ProcessModel::frac_noise(0.4, 2.0);
    CHECK(lmp::infinite_past_mse(m, 1).total == doctest::Approx(2.0).epsilon(1e-15));
    const auto r2 = lmp::infinite_past_mse(m, 2);
    CHECK(r2.total == doctest::Approx(2.0 * 1.16).epsilon(1e-15));
    CHECK(r2.excess == 0.0);
    CHECK(r2.floor == r2.total);
    CHECK_THROWS((void)lmp::infinite_past_mse(m, 0));
}

TEST_CASE("infinite-past MSE approaches sigma(0) slowly") {
    const double d = 0.3;
    const auto m = ProcessModel::frac_noise(d);
    const double s0 = lmp::acvf(m, 0)[0];
    const std::size_t h = 1 << 16;
    const double gap = s0 - lmp::infinite_past_mse(m, h).total;
    const double law = std::pow(static_cast<double>(h), 2 * d - 1) / ((1 - 2 * d) * std::tgamma(d) * std::tgamma(d));
    CHECK(gap / law == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Farima and ARMA infinite-past errors") {
    // Short memory: σ(0) - mmse(h) decays geometrically.
    const auto arma = ProcessModel::generic_ma({1.0, 0.8, 0.5, 0.3, 0.1});
    const double s0 = lmp::acvf(arma, 0)[0];
    CHECK(lmp::infinite_past_mse(arma, 5).total == doctest::Approx(s0).epsilon(1e-15));
    const auto farima = ProcessModel::farima(0.2, {0.5}, {});
    const double g8 = lmp::acvf(farima, 0)[0] - lmp::infinite_past_mse(farima, 8).total;
    const double g64 = lmp::acvf(farima, 0)[0] - lmp::infinite_past_mse(farima, 64).total;
    CHECK(g8 > g64);
    CHECK(g64 > 0.0);
}

TEST_CASE("optimality ordering and monotonicity") {
    for (double d : {0.1, 0.3, 0.45}) {
        const auto m = ProcessModel::frac_noise(d);
        const auto s = lmp::acvf(m, 120);
        const auto a = lmp::ar_coeffs(m, 120);
        const auto b = lmp::ma_coeffs(m, 20);
        for (std::size_t k : {1, 5, 30, 100}) {
            double prev_proj = 0.0;
            for (std::size_t h : {1, 2, 5, 20}) {
                const double mm = lmp::infinite_past_mse(b, h).total;
                const auto pr = lmp::mse_of_weights(s, b, lmp::projection_weights(s, k, h));
                const auto tr = lmp::mse_of_weights(s, b, lmp::truncated_wk_weights(a, k, h));
                CHECK(mm <= pr.total * (1 + 1e-14));
                CHECK(pr.total <= tr.total * (1 + 1e-14));
                CHECK(pr.total <= s[0]);
                CHECK(pr.excess >= -1e-14);
                CHECK(pr.total >= prev_proj);
                prev_proj = pr.total;
            }
        }
        // Nested spans: projection error is nonincreasing in k.
        double prev = s[0];
        for (std::size_t k = 1; k <= 100; k += 9) {
            const double v = lmp::mse_of_weights(s, b, lmp::projection_weights(s, k, 3)).total;
            CHECK(v <= prev * (1 + 1e-14));
            prev = v;
        }
    }
}

TEST_CASE("one-step floor") {
    const auto m = ProcessModel::frac_noise(0.2);
    for (std::size_t k : {1, 10, 100}) {
        CHECK(lmp::mse_of_weights(m, lmp::truncated_wk_weights(m, k, 1)).total > 1.0);
    }
    const auto ma = ProcessModel::generic_ma({1.0, -0.5});
    // Infinite AR representation: truncation leaves a strictly positive excess.
    CHECK(lmp::mse_of_weights(ma, lmp::truncated_wk_weights(ma, 10, 1)).excess > 0.0);
}

TEST_CASE("spectral contrast matches the time-domain form") {
    const auto wn = ProcessModel::white_noise(1.3);
    const auto wfit = lmp::yule_walker(lmp::acvf(wn, 4), 4);
    CHECK(lmp::spectral_contrast_mse(wn, wfit, 1 << 10).value == doctest::Approx(1.3).epsilon(1e-15));

    for (auto [d, k] : {std::pair{0.3, std::size_t{20}}, std::pair{0.45, std::size_t{5}}}) {
        const auto m = ProcessModel::frac_noise(d);
        const auto s = lmp::acvf(m, k);
        const auto fit = lmp::yule_walker(s, k);
        const auto sc = lmp::spectral_contrast_mse(m, fit);
        const double time = lmp::mse_of_weights(m, fit.as_weights()).total;
        CHECK(std::abs(sc.value / time - 1.0) < 1e-7);
        CHECK(sc.error_bound <= 1e-8 * sc.value);
        CHECK(sc.tail > 0.0);
    }
}

TEST_CASE("spectral contrast refuses an uncertified tail") {
    const auto m = ProcessModel::frac_noise(0.45);
    const auto fit = lmp::yule_walker(lmp::acvf(m, 5), 5);
    CHECK_THROWS_AS((void)lmp::spectral_contrast_mse(m, fit, 64), lmp::CertificationError);
}

TEST_CASE("error decomposition") {
    const auto m = ProcessModel::frac_noise(0.35);
    const auto parts = lmp::error_decomposition(m, 30);
    CHECK(parts.term_quad < 0.0);
    CHECK(parts.term_cross > 0.0);
    CHECK(parts.term_trunc < 0.0);

    const auto trunc = lmp::mse_of_weights(m, lmp::truncated_wk_weights(m, 30, 1));
    CHECK(-parts.term_trunc == doctest::Approx(trunc.excess).epsilon(1e-8));
    const auto ar = lmp::mse_of_weights(m, lmp::yule_walker(lmp::acvf(m, 30), 30).as_weights());
    CHECK(-parts.sum() == doctest::Approx(ar.excess).epsilon(1e-8));

    CHECK_THROWS_AS((void)lmp::error_decomposition(ProcessModel::farima(0.3, {0.2}, {}), 5), lmp::InvalidModel);
}

TEST_CASE("error decomposition at k = 1 by brute force") {
    const double d = 0.4;
    const std::size_t n = 100000;
    const auto m = ProcessModel::frac_noise(d);
    const auto parts = lmp::error_decomposition(m, 1);

    const auto a = oracle::frac_ar_sequence(d, n);
    std::vector<long double> s(n + 2);
    s[0] = oracle::frac_acvf(d, 0);
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        s[j + 1] = s[j] * (static_cast<long double>(j) + d) / (static_cast<long double>(j) + 1.0L - d);
    }
    // Σ_{l>1} a_l σ(l - j) for j = 0, 1.
    auto tail = [&](std::size_t j) {
        long double sum = 0.0L;
        for (std::size_t l = 2; l <= n; ++l) {
            sum += a[l] * s[l - j];
        }
        const double fn = static_cast<double>(a[n] * s[n - j]);
        const double fh = static_cast<double>(a[n / 2] * s[n / 2 - j]);
        return static_cast<double>(sum) + oracle::power_tail(fn, fh, n, d - 2.0);
    };
    const double phi = d / (1.0 - d);
    const double delta = static_cast<double>(-phi - a[1]);
    const double quad = -delta * delta * static_cast<double>(s[0]);
    const double cross = 2.0 * delta * tail(1);
    const double trunc = tail(0) + static_cast<double>(a[1]) * tail(1);
    CHECK(parts.term_quad == doctest::Approx(quad).epsilon(1e-10));
    CHECK(parts.term_cross == doctest::Approx(cross).epsilon(1e-6));
    CHECK(parts.term_trunc == doctest::Approx(trunc).epsilon(1e-6));
}

TEST_CASE("MSE CSV row") {
    const auto m = ProcessModel::frac_noise(0.25);
    const auto r = lmp::mse_of_weights(m, lmp::truncated_wk_weights(m, 7, 2));
    std::stringstream buf;
    lmp::write_csv_header(buf);
    lmp::write_csv_row(buf, r);
    const auto table = lmp::csv::read(buf);
    REQUIRE(table.header ==
            std::vector<std::string>{"method", "d", "k", "h", "total", "floor", "excess", "certified_tol"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == "truncated_wk");
    CHECK(std::stod(table.rows[0][4]) == r.total);
}
