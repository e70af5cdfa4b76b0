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
 * Non-protocol experiments driven from a scenario: driven Rabi oscillation
 * with a sinusoid fit, the dispersive-shift validity table and tomography
 * of the entangled channel.
 */

#include <functional>
#include <optional>

#include "cqed/results.hpp"
#include "cqed/scenario.hpp"

namespace cqed {

struct ExperimentOutput {
    Table summary;
    std::optional<Table> series;   ///< plot-ready time series, when produced
};

/// Evolves |down, 0, down> under the displaced Hamiltonian of the selected
/// qubit for `rabi.duration_us`, records P(up) and fits a sinusoid. The
/// summary compares the fitted frequency with 2 epsilon g / Delta_r.
ExperimentOutput run_rabi(const ScenarioConfig &cfg);

/// For each g/Delta in `dispersive.ratios`: chi = g^2/Delta, the exact shift
/// from diagonalization, their relative error and the 2 (g/Delta)^2 bound.
ExperimentOutput run_dispersive_check(const ScenarioConfig &cfg);

/// Prepares the channel with an integrated exchange pulse and reconstructs
/// it from exact and from `tomography.shots`-shot sampled Pauli data.
ExperimentOutput run_tomography(const ScenarioConfig &cfg);

using Experiment = std::function<ExperimentOutput(const ScenarioConfig &)>;

/// Runs `experiment` once, or once per sweep value with `sweep_index` and
/// the parameter path appended as trailing columns.
ExperimentOutput run_sweep(const ScenarioConfig &cfg, const Experiment &experiment);

} // namespace cqed
