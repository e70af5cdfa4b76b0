// Copyright 2026 The cqed-teleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: teleport, rabi, dispersive-check, tomo and sweep.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cqed/experiments.hpp"
#include "cqed/results.hpp"
#include "cqed/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kRuntimeError = 3, kIoError = 4 };

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::optional<std::string> output;
    std::optional<std::string> format;
};

void add_common_flags(CLI::App &cmd, CommonFlags &flags) {
    cmd.add_option("--config", flags.config, "Scenario JSON file");
    cmd.add_option("--seed", flags.seed, "Override protocol.seed");
    cmd.add_option("--trials", flags.trials, "Override protocol.trials");
    cmd.add_option("--output", flags.output, "Override output.path (empty: stdout)");
    cmd.add_option("--format", flags.format, "Override output.format")
        ->check(CLI::IsMember({"csv", "json"}));
}

cqed::ScenarioConfig resolve_config(const CommonFlags &flags) {
    cqed::ScenarioConfig cfg;
    if (!flags.config.empty()) {
        cfg = cqed::load_config(flags.config);
    }
    if (flags.seed) {
        cfg.protocol.seed = *flags.seed;
    }
    if (flags.trials) {
        cfg.protocol.trials = *flags.trials;
    }
    if (flags.output) {
        cfg.output.path = *flags.output;
    }
    if (flags.format) {
        cfg.output.format = *flags.format == "json" ? cqed::OutputFormat::json
                                                    : cqed::OutputFormat::csv;
    }
    cfg.validate();
    if (cfg.output.snapshot_series && cfg.output.path.empty()) {
        throw cqed::ConfigError("output.path: required when snapshot_series is true");
    }
    return cfg;
}

std::string series_path(const std::string &path) {
    const std::filesystem::path p(path);
    std::filesystem::path out = p.parent_path() / (p.stem().string() + "_series");
    out += p.extension();
    return out.string();
}

void report_groups(const cqed::ResultSet &results) {
    for (const cqed::GroupSummary &g : results.groups) {
        std::fprintf(stderr, "%s%s", g.sweep_index ? "sweep " : "",
                     g.sweep_index ? (std::to_string(*g.sweep_index) + ": ").c_str() : "");
        std::fprintf(stderr, "trials=%zu mean_fidelity=%s", g.trials,
                     cqed::format_number(g.mean_fidelity).c_str());
        for (std::size_t k = 0; k < 4; ++k) {
            std::fprintf(stderr, " %s=%zu", std::string(cqed::to_string(cqed::kBellOrder[k])).c_str(),
                         g.outcome_counts[k]);
        }
        std::fprintf(stderr, "\n");
    }
}

void run_teleport(const cqed::ScenarioConfig &cfg) {
    const cqed::ResultSet results = cqed::run_scenario(cfg);
    cqed::emit_results(results, cfg.output.format, cfg.output.path);
    report_groups(results);
}

void run_experiment(const cqed::ScenarioConfig &cfg, const cqed::Experiment &experiment) {
    const cqed::ExperimentOutput out = cqed::run_sweep(cfg, experiment);
    cqed::write_table(out.summary, cfg.output.format, cfg.output.path);
    if (out.series) {
        cqed::write_table(*out.series, cfg.output.format, series_path(cfg.output.path));
    }
}

void dispatch(const std::string &name, const cqed::ScenarioConfig &cfg) {
    if (name == "teleport") {
        run_teleport(cfg);
    } else if (name == "rabi") {
        run_experiment(cfg, cqed::run_rabi);
    } else if (name == "dispersive-check") {
        run_experiment(cfg, cqed::run_dispersive_check);
    } else if (name == "tomo") {
        run_experiment(cfg, cqed::run_tomography);
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Circuit-QED teleportation simulator"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands{
        {"teleport", "Run teleportation trials"},
        {"rabi", "Driven Rabi oscillation and frequency fit"},
        {"dispersive-check", "Exact versus dispersive shift table"},
        {"tomo", "Tomography of the entangled channel"}};

    CommonFlags flags;
    for (const auto &[name, help] : commands) {
        add_common_flags(*app.add_subcommand(name, help), flags);
    }
    CLI::App *sweep = app.add_subcommand("sweep", "Run a subcommand over sweep.values");
    sweep->require_subcommand(1);
    for (const auto &[name, help] : commands) {
        add_common_flags(*sweep->add_subcommand(name, help), flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        const bool swept = sweep->parsed();
        const CLI::App *chosen = swept ? sweep->get_subcommands().front()
                                       : app.get_subcommands().front();
        const cqed::ScenarioConfig cfg = resolve_config(flags);
        if (swept && !cfg.sweep) {
            throw cqed::ConfigError("sweep: config has no sweep section");
        }
        dispatch(chosen->get_name(), cfg);
    } catch (const cqed::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const cqed::IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoError;
    } catch (const cqed::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
    return kOk;
}
