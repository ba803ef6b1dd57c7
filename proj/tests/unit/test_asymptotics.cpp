#include <doctest.h>

#include <lmp/asymptotics.hpp>
#include <lmp/errors.hpp>

#include <cmath>
#include <numbers>

TEST_CASE("constant_C against a per-factor evaluation") {
    const long double d = 0.25L;
    const long double ref = 2.0L * std::tgamma(1 - 2 * d) * std::tgamma(2 * d) /
                            (std::tgamma(-d) * std::tgamma(-d) * std::tgamma(d) * std::tgamma(1 + d));
    CHECK(std::abs(lmp::constant_C(0.25) / static_cast<double>(ref) - 1.0) < 1e-12);
}

TEST_CASE("C(d) ~ d^2 near zero") {
    CHECK(lmp::constant_C(1e-3) / 1e-6 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("C(d) near one half") {
    // With the constant normalised by k · excess(k) → σ_ε² C(d), the product
    // C(d) (1 - 2d) Γ(-1/2)² Γ(1/2) Γ(3/2) tends to 2.
    const double d = 0.499;
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const double prefactor = (4.0 * std::numbers::pi) * sqrt_pi * (sqrt_pi / 2.0);
    CHECK(lmp::constant_C(d) * (1 - 2 * d) * prefactor == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("C(d) is increasing on a sampled grid") {
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double d = 0.4999 * i / 100.0;
        const double c = lmp::constant_C(d);
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("constant_C rejects the boundaries") {
    CHECK_THROWS_AS((void)lmp::constant_C(0.0), lmp::InvalidModel);
    CHECK_THROWS_AS((void)lmp::constant_C(0.5), lmp::InvalidModel);
}

TEST_CASE("k times the truncation excess approaches C(d)") {
    const auto m = lmp::ProcessModel::frac_noise(0.25);
    const double ratio = 2048.0 * lmp::truncation_excess(m, 2048) / lmp::constant_C(0.25);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("ratio r: two routes agree and stay in [0, 1]") {
    for (double d : {0.05, 0.2, 0.35, 0.45}) {
        for (std::size_t k : {4, 16, 64, 256, 512}) {
            const double r = lmp::ratio_r(d, k);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
            CHECK(std::abs(r - lmp::ratio_r_by_subtraction(d, k)) < 1e-8);
        }
    }
}

TEST_CASE("rate_fit") {
    std::vector<std::pair<double, double>> exact;
    for (double k = 16; k <= 4096; k *= 2) {
        exact.emplace_back(k, 7.0 / k);
    }
    const auto fit = lmp::rate_fit(exact);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(fit.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(fit.grid.size() == exact.size());

    std::vector<std::pair<double, double>> short_grid(exact.begin(), exact.begin() + 4);
    CHECK_THROWS((void)lmp::rate_fit(short_grid));
    exact[2].second = 0.0;
    CHECK_THROWS((void)lmp::rate_fit(exact));
}

TEST_CASE("truncation excess decays like 1/k") {
    const auto m = lmp::ProcessModel::frac_noise(0.3);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 128; k <= 4096; k *= 2) {
        pts.emplace_back(static_cast<double>(k), lmp::truncation_excess(m, k));
    }
    const auto fit = lmp::rate_fit(pts);
    CHECK(fit.slope >= -1.05);
    CHECK(fit.slope <= -0.95);
}

TEST_CASE("power_law_fit2 recovers exact exponents") {
    std::vector<lmp::PowerLawSample> s;
    for (double x = 1; x <= 32; x *= 2) {
        for (double y = 64; y <= 1024; y *= 2) {
            s.push_back({x, y, 3.0 * std::pow(x, 0.6) * std::pow(y, -1.0)});
        }
    }
    const auto fit = lmp::power_law_fit2(s);
    CHECK(fit.exponent_x == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(fit.exponent_y == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.log_constant == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("default C grid") {
    const auto g = lmp::default_c_grid();
    CHECK(g.size() == 50);
    CHECK(g.front() == doctest::Approx(0.01));
    CHECK(g.back() == doctest::Approx(0.49));
}
