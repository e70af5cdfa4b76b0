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

#include "cqed/experiments.hpp"

#include <cmath>

#include "cqed/dynamics.hpp"
#include "cqed/tomography.hpp"

namespace cqed {

namespace {

Qubit qubit_from_number(int n) { return n == 2 ? Qubit::second : Qubit::first; }

OperatorMatrix up_projector(const HilbertLayout &layout, Qubit qubit) {
    const Matrix p = 0.5 * (Matrix::Identity(2, 2) + sigma_z().elements());
    return embed(OperatorMatrix(HilbertLayout({2}), p, true), layout, subsystem_of(qubit));
}

void append_sweep_columns(Table &table, std::size_t index, double value,
                          const std::string &parameter) {
    table.columns.push_back("sweep_index");
    table.columns.push_back(parameter);
    for (auto &row : table.rows) {
        row.emplace_back(static_cast<std::uint64_t>(index));
        row.emplace_back(value);
    }
}

void append_rows(Table &into, const Table &from) {
    if (into.columns.empty()) {
        into.columns = from.columns;
    }
    for (const auto &row : from.rows) {
        into.add_row(row);
    }
}

} // namespace

ExperimentOutput run_rabi(const ScenarioConfig &cfg) {
    const Qubit q = qubit_from_number(cfg.rabi.qubit);
    const DeviceParams &params = cfg.device;
    const DisplacedHamiltonian dh = displaced_hamiltonian(params, q);
    const HilbertLayout layout = dh.hamiltonian.layout();
    const QuantumState start = QuantumState::basis(layout, {0, 0, 0});
    const std::vector<Observable> obs{{"p_up", up_projector(layout, q)}};

    const StateTrajectory traj =
        evolve_unitary(start, Hamiltonian::constant(dh.hamiltonian), {0.0, cfg.rabi.duration_us},
                       IntegratorConfig{}, obs);
    const std::vector<double> &p_up = traj.observables.at("p_up");
    const OscillationFit fit = fit_oscillation(traj.times, p_up);

    const double predicted = std::abs(dh.rabi_frequency);
    const double detuning = dressed_qubit_frequency(params, q) - params.omega_d;

    ExperimentOutput out;
    out.summary.columns = {"qubit",          "duration_us",        "rabi_predicted_mhz",
                           "rabi_fitted_mhz", "relative_error",    "amplitude",
                           "offset",          "rms_residual",      "drive_detuning_mhz"};
    out.summary.add_row({static_cast<std::int64_t>(cfg.rabi.qubit), cfg.rabi.duration_us,
                         predicted, fit.frequency, std::abs(fit.frequency - predicted) / predicted,
                         fit.amplitude, fit.offset, fit.rms_residual, detuning});
    if (cfg.output.snapshot_series) {
        Table series;
        series.columns = {"time_us", "p_up"};
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            series.add_row({traj.times[k], p_up[k]});
        }
        out.series = std::move(series);
    }
    return out;
}

ExperimentOutput run_dispersive_check(const ScenarioConfig &cfg) {
    const Qubit q = qubit_from_number(cfg.dispersive.qubit);
    const std::size_t qi = index_of(q);
    const double delta = cfg.device.omega_a[qi] - cfg.device.omega_r;
    ExperimentOutput out;
    out.summary.columns = {"qubit",       "g_over_delta",    "g_mhz",          "delta_mhz",
                           "chi_mhz",     "exact_shift_mhz", "relative_error", "bound",
                           "within_bound", "validity_warning"};
    for (double ratio : cfg.dispersive.ratios) {
        DeviceParams p = cfg.device;
        p.g[qi] = ratio * std::abs(delta);
        p.coupled[qi] = true;
        const double chi = dispersive_chi(p.g[qi], delta);
        const double exact = exact_dispersive_shift(p, q);
        const double rel = std::abs(exact - chi) / std::abs(chi);
        const double bound = 2.0 * ratio * ratio;
        out.summary.add_row({static_cast<std::int64_t>(cfg.dispersive.qubit), ratio, p.g[qi],
                             delta, chi, exact, rel, bound, rel <= bound,
                             ratio > kDispersiveWarningRatio});
    }
    return out;
}

ExperimentOutput run_tomography(const ScenarioConfig &cfg) {
    const QuantumState channel =
        truncate_resonator(prepare_channel(ChannelMode::jc_pulse, cfg.device));
    const DensityMatrix truth = DensityMatrix::from_state(channel);
    Rng rng(cfg.protocol.seed.value_or(0));
    const auto shots = static_cast<std::uint64_t>(cfg.tomography.shots);

    ExperimentOutput out;
    out.summary.columns = {"method", "shots", "concurrence", "fidelity", "min_eigenvalue",
                           "trace"};
    const auto add = [&](const std::string &method, std::uint64_t n, const DensityMatrix &rho) {
        out.summary.add_row({method, n, concurrence(rho), fidelity(channel, rho),
                             rho.min_eigenvalue(), rho.trace()});
    };
    add("exact", std::uint64_t{0}, tomography_reconstruct(exact_tomography(truth)));
    add("sampled", shots, tomography_reconstruct(sampled_tomography(truth, shots, rng)));
    return out;
}

ExperimentOutput run_sweep(const ScenarioConfig &cfg, const Experiment &experiment) {
    cfg.validate();
    if (!cfg.sweep) {
        return experiment(cfg);
    }
    ExperimentOutput total;
    for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
        ScenarioConfig group = cfg;
        const double value = cfg.sweep->values[i];
        set_parameter(group, cfg.sweep->parameter, value);
        try {
            group.validate();
        } catch (const ConfigError &e) {
            throw ConfigError("sweep.values[" + std::to_string(i) + "]: " + e.what());
        }
        ExperimentOutput one = experiment(group);
        append_sweep_columns(one.summary, i, value, cfg.sweep->parameter);
        append_rows(total.summary, one.summary);
        if (one.series) {
            append_sweep_columns(*one.series, i, value, cfg.sweep->parameter);
            if (!total.series) {
                total.series = Table{};
            }
            append_rows(*total.series, *one.series);
        }
    }
    return total;
}

} // namespace cqed
