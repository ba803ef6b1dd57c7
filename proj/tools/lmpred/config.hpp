#pragma once

#include <lmp/process.hpp>
#include <lmp/sim.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lmpred {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Settings shared by all subcommands.
 *
 * Read from a flat text file with one `key = value` per line ('#' starts a
 * comment, lists are comma separated). Command-line flags use the same keys
 * and are applied after the file. Empty grids mean "use the command default".
 */
struct RunConfig {
    std::string model = "frac_noise";  // frac_noise | farima | generic_ma
    std::vector<double> d;
    double noise_variance = 1.0;
    std::vector<double> ar;  // φ_1..φ_p
    std::vector<double> ma;  // θ_1..θ_q, or b_0..b_q for generic_ma
    std::vector<std::size_t> k;
    std::vector<std::size_t> h;
    std::size_t h_max = 40;
    std::size_t n = 200;
    double acvf_tol = 1e-10;
    std::size_t spectral_terms = std::size_t{1} << 20;
    std::size_t reps = 2000;
    std::uint64_t seed = 20240607;
    lmp::SimMethod sim_method = lmp::SimMethod::CirculantEmbedding;
    unsigned threads = 0;
    std::filesystem::path out = ".";
    bool svg = false;

    /// @throws ConfigError on unknown keys or malformed values.
    void set(std::string_view key, std::string_view value);

    [[nodiscard]] lmp::ProcessModel make_model(double d_value) const;
    [[nodiscard]] lmp::ProcessModel make_model() const;
    [[nodiscard]] double d_or(double fallback) const { return d.empty() ? fallback : d.front(); }
    [[nodiscard]] std::size_t k_or(std::size_t fallback) const { return k.empty() ? fallback : k.front(); }
    [[nodiscard]] std::size_t h_or(std::size_t fallback) const { return h.empty() ? fallback : h.front(); }
};

[[nodiscard]] std::vector<std::string> config_keys();

void read_config(std::istream& in, RunConfig& config);
void read_config_file(const std::filesystem::path& path, RunConfig& config);

}  // namespace lmpred
