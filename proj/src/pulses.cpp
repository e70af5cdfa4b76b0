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

#include "cqed/pulses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cqed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix axis_generator(const RotationAxis &axis) {
    if (axis.kind() == PulseKind::z) {
        return sigma_z().elements();
    }
    return std::cos(axis.phase()) * sigma_x().elements() + std::sin(axis.phase()) * sigma_y().elements();
}

} // namespace

void PulseSpec::validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw ArgumentError("PulseSpec: duration must be > 0");
    }
    if (std::abs(kTwoPi * amplitude * duration - angle) > 1e-9) {
        std::ostringstream msg;
        msg << "PulseSpec: pulse area 2 pi * " << amplitude << " MHz * " << duration
            << " us does not equal angle " << angle;
        throw ArgumentError(msg.str());
    }
}

RotationAxis PulseSpec::axis() const {
    return kind == PulseKind::z ? RotationAxis::z() : RotationAxis::xy(axis_phase);
}

OperatorMatrix ideal_rotation(const RotationAxis &axis, double angle) {
    const Matrix u = std::cos(0.5 * angle) * Matrix::Identity(2, 2) -
                     cplx(0.0, std::sin(0.5 * angle)) * axis_generator(axis);
    return OperatorMatrix(HilbertLayout({2}), u);
}

PulseSpec compile_rotation(const RotationAxis &axis, double angle, const DeviceParams &params,
                           Qubit qubit) {
    if (!(angle > 0.0) || angle > kTwoPi + 1e-12) {
        throw ArgumentError("compile_rotation: angle must lie in (0, 2 pi]");
    }
    PulseSpec pulse;
    pulse.kind = axis.kind();
    pulse.angle = angle;
    if (axis.kind() == PulseKind::xy) {
        pulse.axis_phase = axis.phase();
        pulse.carrier = dressed_qubit_frequency(params, qubit);
        const double delta_r = params.omega_r - pulse.carrier;
        pulse.amplitude =
            std::abs(rabi_frequency(params.epsilon, params.g[index_of(qubit)], delta_r));
        if (pulse.amplitude == 0.0) {
            throw ConfigurationError("compile_rotation: Rabi frequency is zero (no drive or no coupling)");
        }
    } else {
        pulse.amplitude = params.bias_shift;
        if (!(pulse.amplitude > 0.0)) {
            throw ConfigurationError("compile_rotation: bias shift for z pulses is zero");
        }
    }
    pulse.duration = angle / (kTwoPi * pulse.amplitude);
    pulse.validate();
    return pulse;
}

OperatorMatrix pulse_hamiltonian(const PulseSpec &pulse) {
    pulse.validate();
    return OperatorMatrix(HilbertLayout({2}),
                          std::numbers::pi * pulse.amplitude * axis_generator(pulse.axis()), true);
}

OperatorMatrix integrated_pulse_hamiltonian(const PulseSpec &pulse, Qubit qubit,
                                            const DeviceParams &params) {
    const std::size_t q = index_of(qubit);
    if (!params.coupled[q]) {
        throw ConfigurationError("apply_pulse: qubit " + std::to_string(q + 1) +
                                 " is uncoupled; integrated pulses drive through the resonator");
    }
    DeviceParams p = params;
    if (pulse.kind == PulseKind::xy) {
        if (!(params.g[q] > 0.0)) {
            throw ConfigurationError("apply_pulse: integrated xy pulse needs g > 0");
        }
        p.omega_d = pulse.carrier;
        const double delta_r = p.omega_r - p.omega_d;
        if (delta_r == 0.0) {
            throw SingularityError("apply_pulse: carrier coincides with the resonator");
        }
        // Drive strength that realizes |Omega_R| = amplitude; a negative
        // Delta_r flips the sign of Omega_R, compensated by the drive phase.
        p.epsilon = pulse.amplitude * std::abs(delta_r) / (2.0 * params.g[q]);
        const double phase = pulse.axis_phase + (delta_r < 0.0 ? std::numbers::pi : 0.0);
        return displaced_hamiltonian(p, qubit, phase).hamiltonian;
    }
    p.omega_d = dressed_qubit_frequency(params, qubit);
    p.omega_a[q] += pulse.amplitude;
    p.epsilon = 0.0;
    return displaced_hamiltonian(p, qubit).hamiltonian;
}

QuantumState apply_pulse(const QuantumState &state, Qubit qubit, const PulseSpec &pulse,
                         PulseMode mode, const DeviceParams &params, const IntegratorConfig &cfg) {
    pulse.validate();
    const HilbertLayout &layout = state.layout();
    if (mode == PulseMode::ideal) {
        const OperatorMatrix u =
            ideal_rotation(pulse.axis(), kTwoPi * pulse.amplitude * pulse.duration);
        if (layout == HilbertLayout({2})) {
            return u * state;
        }
        const std::size_t sub = subsystem_of(qubit);
        if (layout.subsystem_count() != 3 || layout.dim(sub) != 2) {
            throw LayoutError("apply_pulse: layout " + layout.to_string() +
                              " has no qubit at subsystem " + std::to_string(sub));
        }
        return embed(u, layout, sub) * state;
    }
    if (!(layout == protocol_layout(params.n_max))) {
        throw LayoutError("apply_pulse: integrated mode needs the protocol layout, got " +
                          layout.to_string());
    }
    const Hamiltonian h = Hamiltonian::constant(integrated_pulse_hamiltonian(pulse, qubit, params));
    return evolve_unitary(state, h, {0.0, pulse.duration}, cfg).final_state();
}

} // namespace cqed
