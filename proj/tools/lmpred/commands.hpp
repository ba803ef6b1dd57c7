#pragma once

#include "lmpred/config.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace lmpred {

using Written = std::vector<std::filesystem::path>;

/// a_j, b_j and σ(j) up to n.
Written cmd_coeffs(const RunConfig& config);
/// Yule-Walker AR(k) fits and the MSE of every predictor for each (k, h).
Written cmd_fit(const RunConfig& config);
/// (d, C(d)).
Written cmd_figure1(const RunConfig& config);
/// (d, k, r(k)) for F(d).
Written cmd_figure2(const RunConfig& config);
/// mmse, tpmse and llspe against h.
Written cmd_figure3(const RunConfig& config);
/// Excess-versus-k and h tables with fitted log-log slopes.
Written cmd_rates(const RunConfig& config);
/// Monte-Carlo against analytic MSE with z-scores.
Written cmd_montecarlo(const RunConfig& config);

struct Command {
    std::string name;
    std::string description;
    std::function<Written(const RunConfig&)> run;
};

[[nodiscard]] const std::vector<Command>& commands();

}  // namespace lmpred
