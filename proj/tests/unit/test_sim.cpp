#include <doctest.h>

#include <lmp/errors.hpp>
#include <lmp/fit.hpp>
#include <lmp/mse.hpp>
#include <lmp/sim.hpp>

#include <cmath>
#include <sstream>

using lmp::ProcessModel;
using lmp::SimMethod;
using lmp::SimulationPlan;

namespace {

SimulationPlan plan_for(const ProcessModel& m, std::size_t n, std::size_t reps, std::uint64_t seed,
                        SimMethod method = SimMethod::CirculantEmbedding) {
    SimulationPlan p;
    p.model = m;
    p.length = n;
    p.replications = reps;
    p.seed = seed;
    p.method = method;
    return p;
}

// Largest |z| over the sample covariance entries E[x_i x_j] against Toeplitz(σ).
double worst_covariance_z(const SimulationPlan& plan) {
    const lmp::PathSampler sampler(plan);
    const std::size_t n = plan.length;
    const auto sigma = lmp::acvf(plan.model, n - 1);
    std::vector<double> sum(n * n, 0.0);
    std::vector<double> sum_sq(n * n, 0.0);
    std::vector<double> x(n);
    for (std::size_t r = 0; r < plan.replications; ++r) {
        sampler.sample(r, x);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const double p = x[i] * x[j];
                sum[i * n + j] += p;
                sum_sq[i * n + j] += p * p;
            }
        }
    }
    const double reps = static_cast<double>(plan.replications);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double mean = sum[i * n + j] / reps;
            const double var = sum_sq[i * n + j] / reps - mean * mean;
            const double se = std::sqrt(var / reps);
            worst = std::max(worst, std::abs(mean - sigma[j - i]) / se);
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("white noise covariance") {
    CHECK(worst_covariance_z(plan_for(ProcessModel::white_noise(1.5), 4, 100000, 11)) < 3.0);
}

TEST_CASE("circulant covariance fidelity") {
    CHECK(worst_covariance_z(plan_for(ProcessModel::frac_noise(0.3), 32, 100000, 12)) < 4.0);
    CHECK(worst_covariance_z(plan_for(ProcessModel::frac_noise(0.45), 16, 100000, 13)) < 4.0);
}

TEST_CASE("lag-one covariance of F(0.3)") {
    const auto m = ProcessModel::frac_noise(0.3);
    const auto plan = plan_for(m, 64, 100000, 14);
    const lmp::PathSampler sampler(plan);
    std::vector<double> per_rep(plan.replications);
    std::vector<double> x(64);
    for (std::size_t r = 0; r < plan.replications; ++r) {
        sampler.sample(r, x);
        double s = 0.0;
        for (std::size_t t = 0; t + 1 < 64; ++t) {
            s += x[t] * x[t + 1];
        }
        per_rep[r] = s / 63.0;
    }
    const auto est = lmp::summarize(per_rep);
    CHECK(std::abs(est.mean - lmp::acvf(m, 1)[1]) < 3.0 * est.std_error);
}

TEST_CASE("fixed seed gives identical paths regardless of threads") {
    auto plan = plan_for(ProcessModel::frac_noise(0.2), 50, 64, 99);
    plan.threads = 1;
    const auto a = lmp::simulate(plan);
    plan.threads = 4;
    const auto b = lmp::simulate(plan);
    CHECK(a.data == b.data);
    plan.seed = 100;
    CHECK(lmp::simulate(plan).data != a.data);
}

TEST_CASE("disjoint replication blocks are uncorrelated") {
    const auto paths = lmp::simulate(plan_for(ProcessModel::frac_noise(0.4), 8, 40000, 5));
    std::vector<double> cross(20000);
    for (std::size_t i = 0; i < 20000; ++i) {
        cross[i] = paths.at(i, 0) * paths.at(i + 20000, 0);
    }
    const auto est = lmp::summarize(cross);
    CHECK(std::abs(est.mean) < 3.0 * est.std_error);
}

TEST_CASE("length one and two") {
    const auto m = ProcessModel::frac_noise(0.3);
    const auto one = lmp::simulate(plan_for(m, 1, 3, 1));
    CHECK(one.cols == 1);
    CHECK(worst_covariance_z(plan_for(m, 2, 50000, 2)) < 4.0);
}

TEST_CASE("indefinite circulant embedding is rejected") {
    const auto m = ProcessModel::generic_ma({1.0, -0.3, -0.7, 0.4, -0.7, -0.2, 0.9});
    CHECK_THROWS_AS((void)lmp::PathSampler(plan_for(m, 6, 1, 0)), lmp::NumericError);
}

TEST_CASE("MA truncation order") {
    const auto m = ProcessModel::frac_noise(0.05);
    const std::size_t order = lmp::ma_truncation_order(m, 20, 1e-6, std::size_t{1} << 22);
    const auto b = lmp::ma_coeffs(m, order);
    const double s0 = lmp::acvf(m, 0)[0];
    double head = 0.0;
    for (std::size_t j = 0; j + 20 <= order + 1; ++j) {
        head += b[j] * b[j];
    }
    CHECK(s0 - head < 1e-6 * s0);

    CHECK(lmp::ma_truncation_order(ProcessModel::generic_ma({1.0, 0.5}), 10, 1e-6, 1 << 12) >= 10);
    CHECK_THROWS_AS((void)lmp::ma_truncation_order(ProcessModel::frac_noise(0.3), 20, 1e-6, 1 << 16),
                    lmp::CertificationError);
}

TEST_CASE("MA truncation covariance") {
    auto plan = plan_for(ProcessModel::frac_noise(0.05), 12, 40000, 21, SimMethod::MaTruncation);
    CHECK(worst_covariance_z(plan) < 4.0);
    CHECK(lmp::PathSampler(plan).ma_order() > 12);
}

TEST_CASE("empirical MSE against analytic values") {
    const auto wn = ProcessModel::white_noise(2.0);
    lmp::PredictorWeights zero{std::vector<double>(3, 0.0), 3, 1, lmp::PredictorMethod::TruncatedWK};
    const auto e0 = lmp::empirical_mse(plan_for(wn, 4, 2000, 3), zero);
    CHECK(std::abs(e0.mean - 2.0) < 3.0 * e0.std_error);

    const auto m = ProcessModel::frac_noise(0.3);
    const auto plan = plan_for(m, 51, 2000, 4);
    const auto tw = lmp::truncated_wk_weights(m, 50, 1);
    const auto pw = lmp::projection_weights(lmp::acvf(m, 50), 50, 1);
    const auto et = lmp::empirical_mse(plan, tw);
    const auto ep = lmp::empirical_mse(plan, pw);
    CHECK(et.replications == 2000);
    CHECK(std::abs(et.mean - lmp::mse_of_weights(m, tw).total) < 3.0 * et.std_error);
    CHECK(std::abs(ep.mean - lmp::mse_of_weights(m, pw).total) < 3.0 * ep.std_error);
    CHECK(ep.mean <= et.mean + 3.0 * std::hypot(et.std_error, ep.std_error));

    CHECK_THROWS_AS((void)lmp::empirical_mse(plan_for(m, 50, 10, 4), tw), std::invalid_argument);
}

TEST_CASE("circulant and MA truncation agree on a shared cell") {
    const auto m = ProcessModel::frac_noise(0.05);
    const auto w = lmp::truncated_wk_weights(m, 10, 2);
    const auto a = lmp::empirical_mse(plan_for(m, 12, 4000, 8, SimMethod::CirculantEmbedding), w);
    const auto b = lmp::empirical_mse(plan_for(m, 12, 4000, 9, SimMethod::MaTruncation), w);
    CHECK(std::abs(a.mean - b.mean) < 3.0 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("path CSV") {
    const auto plan = plan_for(ProcessModel::frac_noise(0.3), 3, 2, 1);
    const auto paths = lmp::simulate(plan);
    std::stringstream buf;
    lmp::write_csv(buf, paths, plan);
    std::string line;
    std::getline(buf, line);
    CHECK(line.rfind("# lmpred-csv/1", 0) == 0);
    std::getline(buf, line);
    CHECK(line == "replication,x1,x2,x3");
}
