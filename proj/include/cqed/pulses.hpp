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
 * Single-qubit rotations as physical pulses: resonant microwave pulses for
 * axes in the xy plane, bias (frequency-excursion) pulses for z.
 * Envelopes are rectangular.
 */

#include <numbers>

#include "cqed/core.hpp"
#include "cqed/dynamics.hpp"
#include "cqed/hamiltonians.hpp"

namespace cqed {

enum class PulseKind { xy, z };

class RotationAxis {
  public:
    static RotationAxis x() { return RotationAxis(PulseKind::xy, 0.0); }
    static RotationAxis y() { return RotationAxis(PulseKind::xy, 0.5 * std::numbers::pi); }
    static RotationAxis z() { return RotationAxis(PulseKind::z, 0.0); }
    /// Axis (cos phase, sin phase, 0) in the xy plane.
    static RotationAxis xy(double phase) { return RotationAxis(PulseKind::xy, phase); }

    PulseKind kind() const { return kind_; }
    double phase() const { return phase_; }

  private:
    RotationAxis(PulseKind kind, double phase) : kind_(kind), phase_(phase) {}
    PulseKind kind_;
    double phase_;
};

struct PulseSpec {
    PulseKind kind = PulseKind::xy;
    double axis_phase = 0.0;   ///< rad, xy only
    double angle = 0.0;        ///< rad
    double duration = 0.0;     ///< us
    double amplitude = 0.0;    ///< MHz: Rabi frequency (xy) or bias excursion (z)
    double carrier = 0.0;      ///< MHz, xy only

    /// duration > 0 and 2 pi amplitude duration == angle within 1e-9.
    /// Throws ArgumentError otherwise, which also rejects zero-angle pulses.
    void validate() const;

    RotationAxis axis() const;
};

/// exp(-i angle (n . sigma) / 2).
OperatorMatrix ideal_rotation(const RotationAxis &axis, double angle);

/// xy: carrier at the dressed qubit frequency omega_a + chi, amplitude
/// |2 eps g / Delta_r| with Delta_r = omega_r - carrier, duration
/// angle / (2 pi amplitude). z: amplitude = params.bias_shift.
/// Requires angle in (0, 2 pi]; a zero Rabi frequency or bias shift is a
/// ConfigurationError.
PulseSpec compile_rotation(const RotationAxis &axis, double angle, const DeviceParams &params,
                           Qubit qubit);

/// Rotating-frame generator of the ideal pulse on a single-qubit layout:
/// pi amplitude (n . sigma), so evolving for `duration` gives ideal_rotation.
OperatorMatrix pulse_hamiltonian(const PulseSpec &pulse);

/// Ideal mode embeds ideal_rotation at the qubit (any layout whose qubit
/// subsystem exists; a single-qubit layout (2) is also accepted).
/// Integrated mode evolves the protocol-layout state under the drive-frame
/// Hamiltonian of the addressed qubit, exchange coupling included, with the
/// drive on for `duration`.
QuantumState apply_pulse(const QuantumState &state, Qubit qubit, const PulseSpec &pulse,
                         PulseMode mode, const DeviceParams &params,
                         const IntegratorConfig &cfg = {});

/// Drive-frame Hamiltonian used by integrated mode, exposed for analysis.
OperatorMatrix integrated_pulse_hamiltonian(const PulseSpec &pulse, Qubit qubit,
                                            const DeviceParams &params);

} // namespace cqed
