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
 * Teleportation of a qubit state from qubit 1 to qubit 2 through the
 * resonator.
 *
 * Bell basis of (qubit 1, resonator), resonator restricted to {|0>, |1>}:
 *   Psi+- = (-i |down,1> +- |up,0>) / sqrt 2
 *   Phi+- = (|down,0> +- i |up,1>) / sqrt 2
 * The channel is (|0,up> - i |1,down>) / sqrt 2 on (resonator, qubit 2).
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/core.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/pulses.hpp"

namespace cqed {

enum class BellLabel { psi_plus = 0, psi_minus = 1, phi_plus = 2, phi_minus = 3 };

inline constexpr std::array<BellLabel, 4> kBellOrder{BellLabel::psi_plus, BellLabel::psi_minus,
                                                     BellLabel::phi_plus, BellLabel::phi_minus};

std::string_view to_string(BellLabel label);
/// Accepts "psi+", "psi-", "phi+", "phi-". Throws ArgumentError otherwise.
BellLabel parse_bell_label(std::string_view text);

struct BellOutcome {
    BellLabel label;
    double probability;
    QuantumState collapsed_state;
};

/// C0 |down> + C1 |up>. Throws ArgumentError unless |C0|^2 + |C1|^2 = 1 within 1e-9.
QuantumState prepare_input(cplx c0, cplx c1);

/// Haar-random normalized coefficient pair.
std::pair<cplx, cplx> random_input(Rng &rng);

enum class ChannelMode { ideal, jc_pulse };

/// Entangled (resonator, qubit 2) state on layout (n_max + 1, 2). The
/// jc_pulse route starts from |0,up> and applies a resonant pi/2 exchange
/// pulse with qubit 2 tuned onto the resonator.
QuantumState prepare_channel(ChannelMode mode, const DeviceParams &params,
                             PulseMode pulse_mode = PulseMode::integrated,
                             const IntegratorConfig &cfg = {});

/// `params` with `qubit` tuned onto the resonator, the only qubit coupled.
DeviceParams tuned_for_exchange(const DeviceParams &params, Qubit qubit);

/// Bell vector on (qubit 1, resonator) with the resonator of dimension n_max + 1.
QuantumState bell_state(BellLabel label, int n_max);

/// |B><B| (x) I_2 on the protocol layout, in kBellOrder.
std::vector<OperatorMatrix> bell_projectors(const HilbertLayout &layout);

/// Population with n >= 2 photons.
double resonator_leakage(const QuantumState &state);
double resonator_leakage(const DensityMatrix &rho);

/// Projective Bell measurement. StateSupportError when leakage exceeds `leakage_tol`.
BellOutcome bell_measurement(const QuantumState &state, Rng &rng, double leakage_tol = 1e-8);

/// Correction on qubit 2 that maps the conditional state of `label` back
/// to C0 |down> + C1 |up> up to a global phase:
/// Psi+ -> I, Psi- -> sigma_z, Phi+ -> sigma_z sigma_x, Phi- -> sigma_x.
OperatorMatrix feed_forward(BellLabel label);

struct BellBranch {
    BellLabel label;
    QuantumState conditional;   ///< normalized qubit-2 state
    double weight;
};

/// state = sum_k sqrt(weight_k) |B_k> (x) |conditional_k>.
std::array<BellBranch, 4> decompose_bell(const QuantumState &state, double leakage_tol = 1e-8);

enum class MeasurementMode { ideal, physical };

struct TeleportOptions {
    MeasurementMode mode = MeasurementMode::ideal;
    bool noise = false;
    /// Diagnostic switch; false leaves qubit 2 uncorrected.
    bool feed_forward = true;
    IntegratorConfig integrator{};
};

struct TeleportResult {
    BellLabel outcome;
    double fidelity;
    std::array<double, 4> outcome_probabilities;   ///< in kBellOrder
    double protocol_duration;                      ///< us, sum of applied pulse times
    bool noise_enabled;
};

/// Full protocol. Ideal mode measures in the Bell basis directly. Physical
/// mode measures the excitation parity of (qubit 1, resonator); the odd
/// (Psi) sector is resolved by a pi/2 exchange pulse on qubit 1 followed by
/// a sigma_z readout of qubit 1, the even (Phi) sector projectively. With
/// noise on, pulses run under the Lindblad channels of both qubits and the
/// resonator, and the corrections are compiled pulses.
TeleportResult run_teleportation(cplx c0, cplx c1, const TeleportOptions &options,
                                 const DeviceParams &params, Rng &rng);

/// Pulse schedule length (us) for an outcome: channel pulse, Bell rotation
/// (physical mode, Psi sector) and compiled correction pulses.
double protocol_duration(BellLabel outcome, MeasurementMode mode, const DeviceParams &params);

} // namespace cqed
