#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdistil/errors.hpp"
#include "qdistil/sweep.hpp"
#include "qdistil/version.hpp"

namespace {

using qdistil::sweep::AxisSpec;
using qdistil::sweep::SweepConfig;

// Parameters that may be swept (start:stop:step) or fixed (bare scalar).
// When several ranges are given, axes nest in this order, the last one
// varying fastest.
const std::vector<std::string> axis_order = {"N",  "d",  "d1", "d2",
                                             "w",  "w1", "w2"};

void place_parameter(SweepConfig& cfg, const std::string& name,
                     const std::string& text) {
    const AxisSpec ax = qdistil::sweep::parse_axis(name, text);
    if (text.find(':') != std::string::npos) {
        cfg.axes.push_back(ax);
    } else if (name == "N") {
        cfg.parties = static_cast<int>(std::llround(ax.start));
    } else {
        cfg.fixed[name] = ax.start;
    }
}

std::pair<SweepConfig, std::string> config_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qdistil::ConfigError("cannot read config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw qdistil::ConfigError("config file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw qdistil::ConfigError("config file " + path +
                                   ": root must be an object");

    SweepConfig cfg;
    std::string out;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "protocol") {
                cfg.protocol = qdistil::sweep::protocol_from_name(
                    value.get<std::string>());
            } else if (key == "m") {
                cfg.rounds = value.get<int>();
            } else if (key == "n") {
                cfg.copies = value.get<int>();
            } else if (key == "epsilon") {
                cfg.epsilon = value.get<double>();
            } else if (key == "jobs") {
                cfg.jobs = value.get<int>();
            } else if (key == "out") {
                out = value.get<std::string>();
            } else if (std::find(axis_order.begin(), axis_order.end(), key) !=
                       axis_order.end()) {
                // handled below, in canonical order
            } else {
                throw qdistil::ConfigError("config file " + path +
                                           ": unknown key '" + key + "'");
            }
        }
        for (const auto& name : axis_order) {
            if (!j.contains(name)) continue;
            const auto& value = j.at(name);
            if (value.is_string())
                place_parameter(cfg, name, value.get<std::string>());
            else if (name == "N")
                cfg.parties = value.get<int>();
            else
                cfg.fixed[name] = value.get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw qdistil::ConfigError("config file " + path + ": " + e.what());
    }
    if (!j.contains("protocol"))
        throw qdistil::ConfigError("config file " + path +
                                   ": a protocol is required");
    return {cfg, out};
}

void write_outputs(const SweepConfig& cfg, const std::string& out) {
    const auto result = qdistil::sweep::run_sweep(cfg);
    qdistil::sweep::write_csv(result, out);
    qdistil::sweep::write_sidecar(cfg, result, out);
    std::cout << "wrote " << out << " (" << result.rows.size() << " rows) and "
              << qdistil::sweep::sidecar_path(out) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement distillation efficiencies over amplitude "
                 "damping channels"};
    app.set_version_flag("--version", std::string(qdistil::version));
    app.require_subcommand(1);

    auto* sweep_cmd = app.add_subcommand(
        "sweep", "evaluate a protocol over a parameter grid");
    std::string protocol, config_path, sweep_out;
    std::string opt_N, opt_d, opt_d1, opt_d2, opt_w, opt_w1, opt_w2;
    int opt_m = 10, opt_n = 32, sweep_jobs = 1;
    double opt_eps = 1e-6;
    sweep_cmd->add_option("--protocol", protocol,
                          "bell-twocopy | bell-bisection | bell-nonmax | ghz | "
                          "w-state | w-ratio | w-asymptotic | optimal-w");
    sweep_cmd->add_option("--config", config_path,
                          "JSON config file (alternative to the flags below)");
    sweep_cmd->add_option("--d", opt_d, "damping rate, start:stop:step or scalar");
    sweep_cmd->add_option("--d1", opt_d1, "damping rate of the first qubit");
    sweep_cmd->add_option("--d2", opt_d2, "damping rate of the second qubit");
    sweep_cmd->add_option("--w", opt_w, "filter strength, start:stop:step or scalar");
    sweep_cmd->add_option("--w1", opt_w1, "filter strength on the first qubit");
    sweep_cmd->add_option("--w2", opt_w2, "filter strength on the second qubit");
    sweep_cmd->add_option("--N", opt_N, "party count, start:stop:step or scalar");
    sweep_cmd->add_option("--m", opt_m, "two-copy protocol rounds");
    sweep_cmd->add_option("--n", opt_n, "source copies for the bisection protocol");
    sweep_cmd->add_option("--epsilon", opt_eps, "target infidelity");
    sweep_cmd->add_option("--out", sweep_out, "output CSV path");
    sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads");

    auto* figure_cmd = app.add_subcommand(
        "figure", "write one of the built-in datasets");
    std::string figure_id, figure_out;
    int figure_jobs = 1;
    figure_cmd
        ->add_option("id", figure_id,
                     "one of: 1a 1b 1c 1d 2 3 4 5 6 7 8 9")
        ->required();
    figure_cmd->add_option("--out", figure_out, "output CSV path")->required();
    figure_cmd->add_option("--jobs", figure_jobs, "worker threads");

    auto* validate_cmd = app.add_subcommand(
        "validate",
        "cross-check every closed form against the density-matrix oracle");
    std::uint64_t seed = qdistil::oracle::default_seed;
    int samples = 50;
    std::string report_path = "validation-report.csv";
    validate_cmd->add_option("--seed", seed, "random generator seed");
    validate_cmd->add_option("--samples", samples,
                             "random parameter sets per protocol");
    validate_cmd->add_option("--out", report_path, "report CSV path");

    auto* optimal_cmd = app.add_subcommand(
        "optimal-w", "filter strength maximizing the W-state efficiency");
    int optimal_N = 3;
    std::string optimal_d, optimal_out;
    double optimal_eps = 1e-6;
    int optimal_jobs = 1;
    optimal_cmd->add_option("--N", optimal_N, "party count");
    optimal_cmd->add_option("--d", optimal_d, "damping axis, start:stop:step")
        ->required();
    optimal_cmd->add_option("--epsilon", optimal_eps, "target infidelity");
    optimal_cmd->add_option("--out", optimal_out, "output CSV path")->required();
    optimal_cmd->add_option("--jobs", optimal_jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep_cmd->parsed()) {
            SweepConfig cfg;
            std::string out = sweep_out;
            if (!config_path.empty()) {
                auto [file_cfg, file_out] = config_from_json(config_path);
                cfg = std::move(file_cfg);
                if (out.empty()) out = file_out;
                if (sweep_cmd->count("--jobs")) cfg.jobs = sweep_jobs;
            } else {
                if (protocol.empty())
                    throw qdistil::ConfigError(
                        "either --protocol or --config is required");
                cfg.protocol = qdistil::sweep::protocol_from_name(protocol);
                const std::vector<std::pair<std::string, std::string*>> given =
                    {{"N", &opt_N},   {"d", &opt_d},   {"d1", &opt_d1},
                     {"d2", &opt_d2}, {"w", &opt_w},   {"w1", &opt_w1},
                     {"w2", &opt_w2}};
                for (const auto& [name, text] : given)
                    if (!text->empty()) place_parameter(cfg, name, *text);
                cfg.rounds = opt_m;
                cfg.copies = opt_n;
                cfg.epsilon = opt_eps;
                cfg.jobs = sweep_jobs;
            }
            if (out.empty())
                throw qdistil::ConfigError("an output path is required (--out)");
            write_outputs(cfg, out);
            return 0;
        }

        if (figure_cmd->parsed()) {
            SweepConfig cfg = qdistil::sweep::figure_preset(figure_id);
            cfg.jobs = figure_jobs;
            write_outputs(cfg, figure_out);
            return 0;
        }

        if (validate_cmd->parsed()) {
            if (samples < 1)
                throw qdistil::ConfigError("--samples must be at least 1");
            const auto summary =
                qdistil::sweep::run_validation(seed, samples, report_path);
            std::size_t failed = 0;
            for (const auto& row : summary.rows)
                if (!row.pass) ++failed;
            std::cout << summary.rows.size() << " checks, max |deviation| = "
                      << qdistil::sweep::format_double(summary.max_abs_error)
                      << ", seed " << summary.seed << ", report "
                      << report_path << "\n";
            if (!summary.passed) {
                std::cout << failed << " checks FAILED\n";
                return 1;
            }
            std::cout << "all checks passed\n";
            return 0;
        }

        if (optimal_cmd->parsed()) {
            SweepConfig cfg;
            cfg.protocol = qdistil::sweep::Protocol::optimal_w;
            cfg.axes = {qdistil::sweep::parse_axis("d", optimal_d)};
            cfg.parties = optimal_N;
            cfg.epsilon = optimal_eps;
            cfg.jobs = optimal_jobs;
            write_outputs(cfg, optimal_out);
            return 0;
        }
    } catch (const qdistil::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
