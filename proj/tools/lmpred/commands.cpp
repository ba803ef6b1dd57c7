#include "lmpred/commands.hpp"

#include "lmpred/svg.hpp"

#include <lmp/asymptotics.hpp>
#include <lmp/csv.hpp>
#include <lmp/errors.hpp>
#include <lmp/fit.hpp>
#include <lmp/mse.hpp>
#include <lmp/predict.hpp>
#include <lmp/sim.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <sstream>
#include <string>

namespace lmpred {

namespace {

class Output {
public:
    Output(const RunConfig& config, Written& written, const std::string& name)
        : path_(config.out / name) {
        std::filesystem::create_directories(config.out);
        stream_.open(path_, std::ios::binary | std::ios::trunc);
        if (!stream_) {
            throw ConfigError("cannot write " + path_.string());
        }
        written.push_back(path_);
    }
    std::ofstream& stream() { return stream_; }

private:
    std::filesystem::path path_;
    std::ofstream stream_;
};

std::vector<double> d_grid(const RunConfig& config, std::vector<double> fallback) {
    return config.d.empty() ? fallback : config.d;
}

std::vector<std::size_t> k_grid(const RunConfig& config, std::vector<std::size_t> fallback) {
    return config.k.empty() ? fallback : config.k;
}

std::vector<std::size_t> h_grid(const RunConfig& config, std::vector<std::size_t> fallback) {
    return config.h.empty() ? fallback : config.h;
}

std::vector<std::size_t> powers_of_two(unsigned from, unsigned to) {
    std::vector<std::size_t> out;
    for (unsigned e = from; e <= to; ++e) {
        out.push_back(std::size_t{1} << e);
    }
    return out;
}

void require_frac_noise(const RunConfig& config, const char* command) {
    if (config.model != "frac_noise") {
        throw ConfigError(std::string(command) + " is defined for model = frac_noise only");
    }
}

std::string short_number(double x) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << std::setprecision(4) << x;
    return s.str();
}

lmp::AcvfOptions acvf_options(const RunConfig& config) {
    lmp::AcvfOptions options;
    options.tol = config.acvf_tol;
    return options;
}

}  // namespace

Written cmd_coeffs(const RunConfig& config) {
    Written written;
    const auto model = config.make_model();
    const std::map<std::string, lmp::CoefSeq> files = {
        {"ar.csv", lmp::ar_coeffs(model, config.n)},
        {"ma.csv", lmp::ma_coeffs(model, config.n)},
        {"acvf.csv", lmp::acvf(model, config.n, acvf_options(config))},
    };
    for (const auto& [name, seq] : files) {
        Output out(config, written, name);
        lmp::write_csv(out.stream(), seq);
    }
    return written;
}

Written cmd_fit(const RunConfig& config) {
    Written written;
    const auto model = config.make_model();
    const auto ks = k_grid(config, {20});
    const auto hs = h_grid(config, {1});
    const std::size_t k_max = *std::max_element(ks.begin(), ks.end());
    const std::size_t h_max = *std::max_element(hs.begin(), hs.end());
    const auto sigma = lmp::acvf(model, k_max + h_max, acvf_options(config));
    const auto ar = lmp::ar_coeffs(model, k_max + h_max);
    const auto b = lmp::ma_coeffs(model, h_max);

    Output summary(config, written, "fit_summary.csv");
    lmp::csv::write_comment(summary.stream(), model.describe());
    lmp::write_csv_header(summary.stream());
    for (std::size_t k : ks) {
        const auto fit = lmp::yule_walker(sigma, k);
        Output out(config, written, "fit_k" + std::to_string(k) + ".csv");
        lmp::write_csv(out.stream(), fit, model);
        for (std::size_t h : hs) {
            lmp::write_csv_row(summary.stream(), lmp::infinite_past_mse(b, h));
            lmp::write_csv_row(summary.stream(),
                               lmp::mse_of_weights(sigma, b, lmp::projection_weights(sigma, k, h)));
            lmp::write_csv_row(summary.stream(),
                               lmp::mse_of_weights(sigma, b, lmp::truncated_wk_weights(ar, k, h)));
        }
    }
    return written;
}

Written cmd_figure1(const RunConfig& config) {
    Written written;
    const auto grid = d_grid(config, lmp::default_c_grid());
    svg::Series curve{"C(d)", {}, {}};
    {
        Output out(config, written, "figure1.csv");
        lmp::csv::write_comment(out.stream(), "constant C(d) of the truncation excess");
        lmp::csv::write_header(out.stream(), {"d", "C"});
        for (double d : grid) {
            const double c = lmp::constant_C(d);
            lmp::csv::Row row(out.stream());
            row << d << c;
            row.end();
            curve.x.push_back(d);
            curve.y.push_back(c);
        }
    }
    if (config.svg) {
        Output out(config, written, "figure1.svg");
        svg::write_line_chart(out.stream(), {curve}, {"Behaviour of C(d)", "d", "C(d)", false, false});
    }
    return written;
}

Written cmd_figure2(const RunConfig& config) {
    require_frac_noise(config, "figure2");
    Written written;
    std::vector<double> default_d;
    for (int i = 1; i <= 9; ++i) {
        default_d.push_back(static_cast<double>(i) / 20.0);
    }
    std::vector<std::size_t> default_k;
    for (std::size_t k = 4; k <= 512; k += 4) {
        default_k.push_back(k);
    }
    auto ds = d_grid(config, default_d);
    auto ks = k_grid(config, default_k);
    std::sort(ds.begin(), ds.end());
    std::sort(ks.begin(), ks.end());

    struct Cell {
        double d;
        std::size_t k;
        double r = 0.0;
        double r_sub = 0.0;
        double trunc = 0.0;
        double ar = 0.0;
    };
    std::vector<Cell> cells;
    for (double d : ds) {
        for (std::size_t k : ks) {
            cells.push_back({d, k});
        }
    }
    lmp::parallel_for(cells.size(), config.threads, [&](std::size_t i) {
        auto& c = cells[i];
        const auto model = lmp::ProcessModel::frac_noise(c.d, config.noise_variance);
        const auto parts = lmp::error_decomposition(model, c.k);
        c.r = -(parts.term_quad + parts.term_cross) / parts.term_trunc;
        c.trunc = -parts.term_trunc;
        c.ar = -parts.sum();
        c.r_sub = std::nan("");
        if (c.k <= 512) {
            c.r_sub = lmp::ratio_r_by_subtraction(c.d, c.k);
        }
    });

    std::vector<svg::Series> curves;
    {
        Output out(config, written, "figure2.csv");
        lmp::csv::write_comment(out.stream(), "improvement ratio r(k) of the AR(k) fit over truncation");
        lmp::csv::write_comment(out.stream(), "claim_region marks d > 0.3 and k > 20, where r >= 0.5 is expected");
        lmp::csv::write_header(out.stream(), {"d", "k", "r", "r_by_subtraction", "excess_trunc", "excess_ar",
                                              "claim_region", "r_at_least_half"});
        for (const auto& c : cells) {
            lmp::csv::Row row(out.stream());
            const bool claim = c.d > 0.3 && c.k > 20;
            row << c.d << static_cast<unsigned long long>(c.k) << c.r << c.r_sub << c.trunc << c.ar
                << (claim ? 1 : 0) << (c.r >= 0.5 ? 1 : 0);
            row.end();
            const std::string label = "d=" + short_number(c.d);
            if (curves.empty() || curves.back().label != label) {
                curves.push_back({label, {}, {}});
            }
            curves.back().x.push_back(static_cast<double>(c.k));
            curves.back().y.push_back(c.r);
        }
    }
    if (config.svg) {
        Output out(config, written, "figure2.svg");
        svg::write_line_chart(out.stream(), curves, {"Ratio r(k)", "k", "r(k)", false, false});
    }
    return written;
}

Written cmd_figure3(const RunConfig& config) {
    Written written;
    const auto model = config.make_model(config.d_or(0.4));
    const std::size_t k = config.k_or(80);
    const std::size_t h_max = config.h.empty() ? config.h_max : config.h.front();
    const auto sigma = lmp::acvf(model, k + h_max, acvf_options(config));
    const auto ar = lmp::ar_coeffs(model, k + h_max);
    const auto b = lmp::ma_coeffs(model, h_max);
    const auto path = lmp::truncated_wk_weight_path(ar, k, h_max);

    svg::Series mmse{"MMSE", {}, {}};
    svg::Series tpmse{"TPMSE", {}, {}};
    svg::Series llspe{"LLSPE", {}, {}};
    {
        Output out(config, written, "figure3.csv");
        lmp::csv::write_comment(out.stream(), model.describe() + " k=" + std::to_string(k) +
                                                  " sigma0=" + lmp::csv::format_double(sigma[0]));
        lmp::csv::write_header(out.stream(), {"h", "mmse", "tpmse", "llspe"});
        for (std::size_t h = 1; h <= h_max; ++h) {
            const double m = lmp::infinite_past_mse(b, h).total;
            const double t = lmp::mse_of_weights(sigma, b, path[h - 1]).total;
            const double l = lmp::mse_of_weights(sigma, b, lmp::projection_weights(sigma, k, h)).total;
            lmp::csv::Row row(out.stream());
            row << static_cast<unsigned long long>(h) << m << t << l;
            row.end();
            for (auto* s : {&mmse, &tpmse, &llspe}) {
                s->x.push_back(static_cast<double>(h));
            }
            mmse.y.push_back(m);
            tpmse.y.push_back(t);
            llspe.y.push_back(l);
        }
    }
    if (config.svg) {
        Output out(config, written, "figure3.svg");
        svg::write_line_chart(out.stream(), {mmse, tpmse, llspe},
                              {"Prediction errors, k = " + std::to_string(k), "h", "MSE", false, false});
    }
    return written;
}

Written cmd_rates(const RunConfig& config) {
    require_frac_noise(config, "rates");
    Written written;
    const auto ds = d_grid(config, {0.15, 0.2, 0.25, 0.3, 0.35});
    const auto ks = k_grid(config, powers_of_two(7, 12));

    struct Cell {
        double d;
        std::size_t k;
        double trunc = 0.0;
        double ar = 0.0;
    };
    std::vector<Cell> cells;
    for (double d : ds) {
        for (std::size_t k : ks) {
            cells.push_back({d, k});
        }
    }
    lmp::parallel_for(cells.size(), config.threads, [&](std::size_t i) {
        auto& c = cells[i];
        const auto model = lmp::ProcessModel::frac_noise(c.d, config.noise_variance);
        c.trunc = lmp::truncation_excess(model, c.k);
        c.ar = lmp::ar_fit_excess(model, c.k);
    });

    Output table(config, written, "rates.csv");
    lmp::csv::write_comment(table.stream(), "one-step excess over the innovation variance");
    lmp::csv::write_header(table.stream(), {"method", "d", "k", "excess", "k_excess_over_C"});
    Output fits(config, written, "rates_fit.csv");
    lmp::csv::write_comment(fits.stream(), "least-squares slopes on log-log scale");
    lmp::csv::write_header(fits.stream(), {"method", "d", "slope", "intercept", "r_squared"});

    for (double d : ds) {
        const double c_d = lmp::constant_C(d);
        for (const char* method : {"truncated_wk", "yule_walker"}) {
            std::vector<std::pair<double, double>> points;
            for (const auto& c : cells) {
                if (c.d != d) {
                    continue;
                }
                const double excess = std::string(method) == "truncated_wk" ? c.trunc : c.ar;
                const double kk = static_cast<double>(c.k);
                lmp::csv::Row row(table.stream());
                row << method << d << static_cast<unsigned long long>(c.k) << excess
                    << kk * excess / (config.noise_variance * c_d);
                row.end();
                points.emplace_back(kk, excess);
            }
            if (points.size() >= 5) {
                const auto fit = lmp::rate_fit(points);
                lmp::csv::Row row(fits.stream());
                row << method << d << fit.slope << fit.intercept << fit.r_squared;
                row.end();
            }
        }
    }

    // Slow convergence of the infinite-past error to σ(0).
    Output h_table(config, written, "rates_h.csv");
    lmp::csv::write_comment(h_table.stream(),
                            "sigma0 - mmse(h) against the h^(2d-1) / ((1-2d) Gamma(d)^2) law");
    lmp::csv::write_header(h_table.stream(), {"d", "h", "gap", "gap_over_law"});
    const auto hs = h_grid(config, powers_of_two(6, 13));
    const std::size_t h_top = *std::max_element(hs.begin(), hs.end());
    for (double d : ds) {
        const auto model = lmp::ProcessModel::frac_noise(d, config.noise_variance);
        const double sigma0 = lmp::acvf(model, 0)[0];
        const auto b = lmp::ma_coeffs(model, h_top);
        std::vector<std::pair<double, double>> points;
        for (std::size_t h : hs) {
            const double gap = sigma0 - lmp::infinite_past_mse(b, h).total;
            const double hh = static_cast<double>(h);
            const double law = std::pow(hh, 2.0 * d - 1.0) * config.noise_variance /
                               ((1.0 - 2.0 * d) * std::tgamma(d) * std::tgamma(d));
            lmp::csv::Row row(h_table.stream());
            row << d << static_cast<unsigned long long>(h) << gap << gap / law;
            row.end();
            points.emplace_back(hh, gap);
        }
        if (points.size() >= 5) {
            const auto fit = lmp::rate_fit(points);
            lmp::csv::Row row(fits.stream());
            row << "infinite_past_h" << d << fit.slope << fit.intercept << fit.r_squared;
            row.end();
        }
    }
    return written;
}

Written cmd_montecarlo(const RunConfig& config) {
    Written written;
    const auto ds = d_grid(config, {0.3});
    const auto ks = k_grid(config, {50});
    const auto hs = h_grid(config, {1, 5});
    const std::size_t h_top = *std::max_element(hs.begin(), hs.end());

    Output out(config, written, "montecarlo.csv");
    lmp::csv::write_comment(out.stream(), "sim_method=" + lmp::to_string(config.sim_method) +
                                              " seed=" + std::to_string(config.seed) +
                                              " reps=" + std::to_string(config.reps));
    lmp::csv::write_header(out.stream(),
                           {"method", "d", "k", "h", "mc_mean", "mc_stderr", "analytic_total", "z"});
    for (double d : ds) {
        const auto model = config.make_model(d);
        for (std::size_t k : ks) {
            const auto sigma = lmp::acvf(model, k + h_top, acvf_options(config));
            const auto ar = lmp::ar_coeffs(model, k + h_top);
            const auto b = lmp::ma_coeffs(model, h_top);
            lmp::SimulationPlan plan;
            plan.model = model;
            plan.length = k + h_top;
            plan.replications = config.reps;
            plan.seed = config.seed;
            plan.method = config.sim_method;
            plan.threads = config.threads;
            for (std::size_t h : hs) {
                for (const auto& weights :
                     {lmp::truncated_wk_weights(ar, k, h), lmp::projection_weights(sigma, k, h)}) {
                    const auto analytic = lmp::mse_of_weights(sigma, b, weights);
                    const auto mc = lmp::empirical_mse(plan, weights);
                    lmp::csv::Row row(out.stream());
                    row << lmp::to_string(weights.method) << d << static_cast<unsigned long long>(k)
                        << static_cast<unsigned long long>(h) << mc.mean << mc.std_error << analytic.total
                        << (mc.mean - analytic.total) / mc.std_error;
                    row.end();
                }
            }
        }
    }
    return written;
}

const std::vector<Command>& commands() {
    static const std::vector<Command> table = {
        {"coeffs", "AR, MA and autocovariance coefficients", cmd_coeffs},
        {"fit", "Yule-Walker fits and predictor MSEs", cmd_fit},
        {"figure1", "constant C(d) over a d grid", cmd_figure1},
        {"figure2", "improvement ratio r(k) over a (d, k) grid", cmd_figure2},
        {"figure3", "MMSE, TPMSE and LLSPE against the horizon", cmd_figure3},
        {"rates", "excess-versus-k and h rate tables", cmd_rates},
        {"montecarlo", "Monte-Carlo check of analytic MSEs", cmd_montecarlo},
    };
    return table;
}

}  // namespace lmpred
