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

#pragma once

/**
 * @file
 * Scenario files and experiment orchestration.
 *
 * A scenario is a single JSON object:
 *
 *   {
 *     "name": "baseline",
 *     "device":   { "omega_r": 5000, "omega_a": [6000, 7000], "g": [17, 17],
 *                   "kappa": 0.005 | "Q": 1e6,
 *                   "gamma1": [..], "gamma_phi": [..] | "T1": [..], "T2": [..],
 *                   "epsilon": .., "omega_d": .., "n_max": 2,
 *                   "coupled": [true, true], "bias_shift": 25 },
 *     "protocol": { "mode": "ideal" | "physical", "noise": false,
 *                   "C0": [re, im] | "random", "C1": [re, im],
 *                   "trials": 1, "seed": 7, "feed_forward": true },
 *     "sweep":    { "parameter": "device.g", "values": [5.8, 17, 50, 100] },
 *     "output":   { "format": "csv" | "json", "path": "out.csv",
 *                   "snapshot_series": false },
 *     "rabi":       { "qubit": 1, "duration_us": 0.1 },
 *     "dispersive": { "qubit": 1, "ratios": [0.02, 0.05, 0.1] },
 *     "tomography": { "shots": 10000 }
 *   }
 *
 * Every section and key is optional; missing device fields take the default
 * device profile, except that omitted drive fields follow the loaded device
 * (omega_d on the dressed first qubit, epsilon = 1.47 |omega_r - omega_d|).
 * Unknown keys are rejected.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqed/hamiltonians.hpp"
#include "cqed/protocol.hpp"

namespace cqed {

enum class OutputFormat { csv, json };

struct ProtocolConfig {
    MeasurementMode mode = MeasurementMode::ideal;
    bool noise = false;
    bool random_input = false;
    cplx c0{1.0, 0.0};
    cplx c1{0.0, 0.0};
    std::int64_t trials = 1;
    std::optional<std::uint64_t> seed;
    bool feed_forward = true;

    friend bool operator==(const ProtocolConfig &, const ProtocolConfig &) = default;
};

struct SweepConfig {
    /// "device.<field>" or "device.<field>[i]"; array fields without an
    /// index set both entries. Also "rabi.duration_us" and "tomography.shots".
    std::string parameter;
    std::vector<double> values;

    friend bool operator==(const SweepConfig &, const SweepConfig &) = default;
};

struct OutputConfig {
    OutputFormat format = OutputFormat::csv;
    std::string path;   ///< empty writes to stdout
    bool snapshot_series = false;   ///< needs a non-empty path when written

    friend bool operator==(const OutputConfig &, const OutputConfig &) = default;
};

struct RabiConfig {
    int qubit = 1;   ///< 1 or 2
    double duration_us = 0.1;

    friend bool operator==(const RabiConfig &, const RabiConfig &) = default;
};

struct DispersiveConfig {
    int qubit = 1;
    std::vector<double> ratios{0.02, 0.05, 0.1};

    friend bool operator==(const DispersiveConfig &, const DispersiveConfig &) = default;
};

struct TomographyConfig {
    std::int64_t shots = 10000;

    friend bool operator==(const TomographyConfig &, const TomographyConfig &) = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    DeviceParams device = default_device();
    ProtocolConfig protocol;
    std::optional<SweepConfig> sweep;
    OutputConfig output;
    RabiConfig rabi;
    DispersiveConfig dispersive;
    TomographyConfig tomography;

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    friend bool operator==(const ScenarioConfig &, const ScenarioConfig &) = default;
};

/// Parses and validates scenario JSON. ConfigError carries the line and
/// column of a syntax error, or the name of the offending field.
ScenarioConfig parse_config(const std::string &text);
/// Reads `path` (IoError if unreadable) and parses it.
ScenarioConfig load_config(const std::string &path);
/// Complete JSON for `cfg`, every field explicit. parse_config inverts it.
std::string emit_config(const ScenarioConfig &cfg);

/// Sets the numeric field named by a sweep path. ConfigError for unknown paths.
void set_parameter(ScenarioConfig &cfg, const std::string &path, double value);
/// True when `path` names a numeric field accepted by set_parameter.
bool is_sweep_parameter(const std::string &path);

/// Seed of trial `index`: seed + index.
std::uint64_t trial_seed(const ScenarioConfig &cfg, std::size_t index);

struct TrialRow {
    std::string scenario;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    BellLabel outcome = BellLabel::psi_plus;
    double fidelity = 0.0;
    double duration_us = 0.0;
    std::optional<std::size_t> sweep_index;
    std::optional<double> sweep_value;
};

struct GroupSummary {
    std::optional<std::size_t> sweep_index;
    std::optional<double> sweep_value;
    std::size_t trials = 0;
    double mean_fidelity = 0.0;
    std::array<std::size_t, 4> outcome_counts{};   ///< in kBellOrder
};

struct ResultSet {
    std::string sweep_parameter;   ///< empty without a sweep
    std::vector<TrialRow> rows;     ///< sorted by (sweep index, trial)
    std::vector<GroupSummary> groups;
};

/// Runs every trial of every sweep group. Module errors are rethrown as
/// TrialError tagged with the trial (and sweep) index.
ResultSet run_scenario(const ScenarioConfig &cfg);

} // namespace cqed
