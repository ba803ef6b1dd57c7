#include <doctest.h>

#include "support/oracles.hpp"

#include <lmp/csv.hpp>
#include <lmp/errors.hpp>
#include <lmp/process.hpp>
#include <lmp/special.hpp>

#include <cmath>
#include <sstream>

using lmp::ProcessModel;

TEST_CASE("model validation") {
    CHECK_THROWS_AS((void)ProcessModel::frac_noise(0.0), lmp::InvalidModel);
    CHECK_THROWS_AS((void)ProcessModel::frac_noise(0.5), lmp::InvalidModel);
    CHECK_THROWS_AS((void)ProcessModel::frac_noise(0.3, 0.0), lmp::InvalidModel);
    // φ(z) = 1 - 1.2 z has its zero inside the unit disk.
    CHECK_THROWS_AS((void)ProcessModel::farima(0.3, {1.2}, {}), lmp::InvalidModel);
    CHECK_THROWS_AS((void)ProcessModel::farima(0.3, {}, {-1.0}), lmp::InvalidModel);
    CHECK_THROWS_AS((void)ProcessModel::generic_ma({0.5, 1.0}), lmp::InvalidModel);
    CHECK_NOTHROW((void)ProcessModel::farima(0.3, {0.5}, {0.4}));
}

TEST_CASE("ar_coeffs examples") {
    const auto a = lmp::ar_coeffs(ProcessModel::frac_noise(0.4), 1);
    CHECK(a[0] == 1.0);
    CHECK(a[1] == doctest::Approx(-0.4).epsilon(1e-15));

    const double d = 0.3;
    const auto a2 = lmp::ar_coeffs(ProcessModel::frac_noise(d), 2);
    CHECK(a2[2] == doctest::Approx(-0.105).epsilon(1e-14));
    CHECK(a2[2] == doctest::Approx(lmp::gamma_ratio({2.0 - d}, {3.0, -d}).value()).epsilon(1e-13));

    const auto w = lmp::ar_coeffs(ProcessModel::white_noise(), 5);
    CHECK(w[0] == 1.0);
    for (std::size_t j = 1; j <= 5; ++j) {
        CHECK(w[j] == 0.0);
    }
}

TEST_CASE("ma_coeffs examples") {
    CHECK(lmp::ma_coeffs(ProcessModel::frac_noise(0.4), 1)[1] == doctest::Approx(0.4).epsilon(1e-15));
    const double d = 0.25;
    CHECK(lmp::ma_coeffs(ProcessModel::frac_noise(d), 3)[3] ==
          doctest::Approx(d * (1 + d) * (2 + d) / 6.0).epsilon(1e-15));
    CHECK(d * (1 + d) * (2 + d) / 6.0 == doctest::Approx(0.1171875));
}

TEST_CASE("AR and MA streams are inverse power series") {
    const auto check = [](const ProcessModel& m, double tol) {
        const std::size_t n = 200;
        const auto a = lmp::ar_coeffs(m, n);
        const auto b = lmp::ma_coeffs(m, n);
        double worst = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            double c = 0.0;
            for (std::size_t j = 0; j <= i; ++j) {
                c += a[j] * b[i - j];
            }
            worst = std::max(worst, std::abs(c - (i == 0 ? 1.0 : 0.0)));
        }
        CHECK(worst < tol);
    };
    check(ProcessModel::frac_noise(0.45), 1e-10);
    check(ProcessModel::farima(0.3, {0.5, -0.2}, {0.4}), 1e-10);
    check(ProcessModel::generic_ma({1.0, 0.5, -0.2}), 1e-10);
}

TEST_CASE("FracNoise sign structure") {
    for (double d : {0.05, 0.25, 0.45}) {
        const auto m = ProcessModel::frac_noise(d);
        const auto a = lmp::ar_coeffs(m, 2000);
        const auto b = lmp::ma_coeffs(m, 2000);
        const auto s = lmp::acvf(m, 2000);
        bool ok = a[0] == 1.0 && b[0] == 1.0;
        for (std::size_t j = 1; j <= 2000; ++j) {
            ok = ok && a[j] < 0.0 && b[j] > 0.0 && s[j] > 0.0;
        }
        CHECK(ok);
    }
}

TEST_CASE("ratio recursions agree with Gamma closed forms up to j = 10^4") {
    for (double d : {0.05, 0.25, 0.45}) {
        const auto m = ProcessModel::frac_noise(d);
        const std::size_t n = 10000;
        const auto a = lmp::ar_coeffs(m, n);
        const auto b = lmp::ma_coeffs(m, n);
        const auto s = lmp::acvf(m, n);
        double worst = 0.0;
        for (std::size_t j = 0; j <= n; j += (j < 100 ? 1 : 37)) {
            worst = std::max(worst, std::abs(a[j] / static_cast<double>(oracle::frac_ar(d, j)) - 1.0));
            worst = std::max(worst, std::abs(b[j] / static_cast<double>(oracle::frac_ma(d, j)) - 1.0));
            worst = std::max(worst, std::abs(s[j] / static_cast<double>(oracle::frac_acvf(d, j)) - 1.0));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("acvf examples") {
    const auto s = lmp::acvf(ProcessModel::frac_noise(0.4), 1);
    CHECK(s[1] / s[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    const double d = 0.4;
    const double closed = lmp::gamma_ratio({1.0 - 2.0 * d}, {1.0 - d, 1.0 - d}).value();
    CHECK(s[0] == doctest::Approx(closed).epsilon(1e-14));

    // Near d = 0 the process is close to white noise.
    const auto small = lmp::acvf(ProcessModel::frac_noise(1e-6), 5);
    for (std::size_t j = 1; j <= 5; ++j) {
        CHECK(std::abs(small[j]) < 1e-5);
    }

    const auto ma1 = lmp::acvf(ProcessModel::generic_ma({1.0, 0.5}), 3);
    CHECK(ma1[0] == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(ma1[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ma1[2] == 0.0);
    CHECK(ma1[3] == 0.0);
}

TEST_CASE("Farima autocovariance matches the MA sum") {
    // Brute-force Σ b_m b_{m+j} for a short-memory-dominated model, with an
    // explicit power-law remainder for the fractional tail.
    const auto m = ProcessModel::farima(0.1, {0.5}, {0.3}, 2.0);
    const auto s = lmp::acvf(m, 5);
    CHECK(s.certified_tol <= 1e-10 * s[0]);
    const std::size_t n = 1 << 21;
    const auto b = lmp::ma_coeffs(m, n + 5);
    for (std::size_t j : {0, 1, 5}) {
        long double sum = 0.0L;
        for (std::size_t i = 0; i <= n; ++i) {
            sum += static_cast<long double>(b[i]) * b[i + j];
        }
        const double fn = b[n] * b[n + j];
        const double fh = b[n / 2] * b[n / 2 + j];
        const double total = 2.0 * (static_cast<double>(sum) + oracle::power_tail(fn, fh, n, 2.0 * 0.1 - 2.0));
        CHECK(s[j] == doctest::Approx(total).epsilon(1e-8));
    }
}

TEST_CASE("orthogonality of a_l against the autocovariance") {
    for (std::size_t j : {1, 2, 5}) {
        CHECK(std::abs(oracle::orthogonality_sum(0.3, j, 100000)) < 1e-9);
    }
    // j = 0 gives the innovation variance.
    CHECK(oracle::orthogonality_sum(0.3, 0, 100000) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("verify_decay") {
    const auto m = ProcessModel::frac_noise(0.3);
    const auto ar = lmp::verify_decay(lmp::ar_coeffs(m, 2000), 0.01);
    CHECK(ar.target_exponent == doctest::Approx(-1.3));
    CHECK(ar.fitted_exponent >= -1.35);
    CHECK(ar.fitted_exponent <= -1.25);
    CHECK(ar.max_constant > 0.0);

    const auto ac = lmp::verify_decay(lmp::acvf(m, 2000), 0.01);
    CHECK(ac.fitted_exponent >= -0.45);
    CHECK(ac.fitted_exponent <= -0.35);

    const auto ma1 = lmp::verify_decay(lmp::acvf(ProcessModel::generic_ma({1.0, 0.5}), 100), 0.01);
    CHECK(ma1.zero_tail);
    CHECK(std::isnan(ma1.fitted_exponent));

    CHECK_THROWS((void)lmp::verify_decay(lmp::acvf(m, 10), 0.01));
}

TEST_CASE("extend keeps existing values") {
    auto a = lmp::ar_coeffs(ProcessModel::frac_noise(0.2), 10);
    const auto before = a.values;
    a.extend(50);
    REQUIRE(a.size() >= 51);
    for (std::size_t j = 0; j < before.size(); ++j) {
        CHECK(a[j] == before[j]);
    }
    CHECK(a[50] == lmp::ar_coeffs(ProcessModel::frac_noise(0.2), 50)[50]);
}

TEST_CASE("coefficient CSV round trip") {
    const auto s = lmp::acvf(ProcessModel::frac_noise(0.35), 40);
    std::stringstream buf;
    lmp::write_csv(buf, s);
    const auto table = lmp::csv::read(buf);
    REQUIRE(table.rows.size() == 41);
    CHECK(table.header.size() == 2);
    for (std::size_t j = 0; j <= 40; ++j) {
        CHECK(std::stod(table.rows[j][1]) == s[j]);
    }
}
