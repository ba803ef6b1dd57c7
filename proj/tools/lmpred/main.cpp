#include "lmpred/commands.hpp"
#include "lmpred/config.hpp"

#include <lmp/errors.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <utility>
#include <vector>

namespace {

// Exit codes: 1 for configuration and model errors, 2 for numeric or certification failures.
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

struct Overrides {
    std::string config_path;
    std::string d, k, h, seed, reps, out;
    bool svg = false;
};

void add_shared_options(CLI::App& sub, Overrides& o) {
    sub.add_option("--config", o.config_path, "flat key = value config file");
    sub.add_option("--out", o.out, "output directory");
    sub.add_option("--d", o.d, "memory parameter (comma list for grids)");
    sub.add_option("--k", o.k, "observation span / AR order (comma list for grids)");
    sub.add_option("--h", o.h, "horizon (comma list for grids; h_max for figure3)");
    sub.add_option("--seed", o.seed, "simulation seed");
    sub.add_option("--reps", o.reps, "Monte-Carlo replications");
    sub.add_flag("--svg", o.svg, "also write SVG plots");
}

lmpred::RunConfig build_config(const Overrides& o) {
    lmpred::RunConfig config;
    if (!o.config_path.empty()) {
        lmpred::read_config_file(o.config_path, config);
    }
    const std::pair<const char*, const std::string*> flags[] = {
        {"out", &o.out}, {"d", &o.d}, {"k", &o.k}, {"h", &o.h}, {"seed", &o.seed}, {"reps", &o.reps}};
    for (const auto& [key, value] : flags) {
        if (!value->empty()) {
            config.set(key, *value);
        }
    }
    if (o.svg) {
        config.svg = true;
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lmpred: linear prediction of long-memory processes"};
    // --h is the horizon flag, so help is only reachable as --help.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    Overrides overrides;
    const lmpred::Command* selected = nullptr;
    for (const auto& command : lmpred::commands()) {
        auto* sub = app.add_subcommand(command.name, command.description);
        add_shared_options(*sub, overrides);
        sub->callback([&selected, &command] { selected = &command; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }
    if (selected == nullptr) {
        return kExitConfig;
    }

    try {
        const auto config = build_config(overrides);
        for (const auto& path : selected->run(config)) {
            std::cout << path.string() << '\n';
        }
        return 0;
    } catch (const lmp::NumericError& e) {
        std::cerr << "lmpred " << selected->name << ": numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const lmpred::ConfigError& e) {
        std::cerr << "lmpred " << selected->name << ": invalid config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const lmp::PoleError& e) {
        std::cerr << "lmpred " << selected->name << ": " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "lmpred " << selected->name << ": invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "lmpred " << selected->name << ": " << e.what() << '\n';
        return kExitConfig;
    }
}
