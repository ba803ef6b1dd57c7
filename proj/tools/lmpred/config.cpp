#include "lmpred/config.hpp"

#include <lmp/errors.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace lmpred {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = value.find(',');
        const auto item = trim(value.substr(0, comma));
        if (!item.empty()) {
            items.push_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        value.remove_prefix(comma + 1);
    }
    return items;
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string s(text);
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    double x = 0.0;
    in >> x;
    if (in.fail() || !in.eof()) {
        throw ConfigError("invalid number for '" + std::string(key) + "': " + s);
    }
    return x;
}

template <typename T>
T parse_integer(std::string_view key, std::string_view text) {
    T x{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, x);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError("invalid integer for '" + std::string(key) + "': " + std::string(text));
    }
    return x;
}

std::vector<double> parse_doubles(std::string_view key, std::string_view value) {
    std::vector<double> out;
    for (auto item : split_list(value)) {
        out.push_back(parse_double(key, item));
    }
    return out;
}

std::vector<std::size_t> parse_counts(std::string_view key, std::string_view value) {
    std::vector<std::size_t> out;
    for (auto item : split_list(value)) {
        const auto x = parse_integer<std::size_t>(key, item);
        if (x == 0) {
            throw ConfigError("'" + std::string(key) + "' values must be at least 1");
        }
        out.push_back(x);
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no" || value == "off") {
        return false;
    }
    throw ConfigError("invalid boolean for '" + std::string(key) + "': " + std::string(value));
}

}  // namespace

std::vector<std::string> config_keys() {
    return {"model", "d",    "noise_variance", "ar",   "ma",         "k",       "h",   "h_max",
            "n",     "acvf_tol", "spectral_terms", "reps", "seed", "sim_method", "threads", "out", "svg"};
}

void RunConfig::set(std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "model") {
        if (value != "frac_noise" && value != "farima" && value != "generic_ma") {
            throw ConfigError("unknown model '" + std::string(value) + "'");
        }
        model = value;
    } else if (key == "d") {
        d = parse_doubles(key, value);
    } else if (key == "noise_variance") {
        noise_variance = parse_double(key, value);
    } else if (key == "ar") {
        ar = parse_doubles(key, value);
    } else if (key == "ma") {
        ma = parse_doubles(key, value);
    } else if (key == "k") {
        k = parse_counts(key, value);
    } else if (key == "h") {
        h = parse_counts(key, value);
    } else if (key == "h_max") {
        h_max = parse_integer<std::size_t>(key, value);
    } else if (key == "n") {
        n = parse_integer<std::size_t>(key, value);
    } else if (key == "acvf_tol") {
        acvf_tol = parse_double(key, value);
    } else if (key == "spectral_terms") {
        spectral_terms = parse_integer<std::size_t>(key, value);
    } else if (key == "reps") {
        reps = parse_integer<std::size_t>(key, value);
    } else if (key == "seed") {
        seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "sim_method") {
        if (value == "circulant") {
            sim_method = lmp::SimMethod::CirculantEmbedding;
        } else if (value == "ma_truncation") {
            sim_method = lmp::SimMethod::MaTruncation;
        } else {
            throw ConfigError("unknown sim_method '" + std::string(value) + "'");
        }
    } else if (key == "threads") {
        threads = parse_integer<unsigned>(key, value);
    } else if (key == "out") {
        out = std::string(value);
    } else if (key == "svg") {
        svg = parse_bool(key, value);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

lmp::ProcessModel RunConfig::make_model(double d_value) const {
    if (model == "frac_noise") {
        return lmp::ProcessModel::frac_noise(d_value, noise_variance);
    }
    if (model == "farima") {
        return lmp::ProcessModel::farima(d_value, ar, ma, noise_variance);
    }
    return lmp::ProcessModel::generic_ma(ma.empty() ? std::vector<double>{1.0} : ma, noise_variance);
}

lmp::ProcessModel RunConfig::make_model() const { return make_model(d_or(0.3)); }

void read_config(std::istream& in, RunConfig& config) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(view.substr(0, eq));
        try {
            config.set(key, view.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void read_config_file(const std::filesystem::path& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    read_config(in, config);
}

}  // namespace lmpred
