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
 * Hamiltonians of the two-qubit + resonator device, collapse channels and
 * the rate conversions between coherence times, quality factors and
 * Lindblad rates.
 *
 * Every public frequency and rate is linear, in MHz (the value usually
 * quoted as X/2pi). Time is in microseconds. Operators returned here are
 * angular (rad/us): the 2pi factor is applied once, inside each builder.
 */

#include <array>
#include <span>
#include <string>
#include <vector>

#include "cqed/core.hpp"

namespace cqed {

enum class Qubit : std::size_t { first = 0, second = 1 };

inline constexpr std::array<Qubit, 2> kBothQubits{Qubit::first, Qubit::second};

inline std::size_t index_of(Qubit q) { return static_cast<std::size_t>(q); }
/// Position of `q` inside protocol_layout().
inline std::size_t subsystem_of(Qubit q) {
    return q == Qubit::first ? kQubit1Subsystem : kQubit2Subsystem;
}

struct DeviceParams {
    double omega_r = 0.0;                ///< resonator frequency
    std::array<double, 2> omega_a{};     ///< bare qubit transition frequencies
    std::array<double, 2> g{};           ///< qubit-resonator couplings
    double kappa = 0.0;                  ///< resonator energy decay rate
    std::array<double, 2> gamma1{};      ///< qubit relaxation rates
    std::array<double, 2> gamma_phi{};   ///< qubit pure-dephasing rates
    double epsilon = 0.0;                ///< drive amplitude
    double omega_d = 0.0;                ///< drive frequency
    int n_max = 2;                       ///< Fock truncation
    std::array<bool, 2> coupled{true, true};
    double bias_shift = 25.0;            ///< z-pulse frequency excursion

    /// Throws ArgumentError naming the first offending field.
    void validate() const;

    friend bool operator==(const DeviceParams &, const DeviceParams &) = default;
};

/// Device profile from measured circuit-QED numbers: resonator at 5 GHz,
/// qubits at 6 and 7 GHz, g = 17 MHz, Q = 1e6, T1 = 7.3 us, T2 = 500 ns,
/// drive tuned resonant with the dressed first qubit.
DeviceParams default_device();

/// Charge-basis two-level box: -(1/2)(E_el sigma_z + E_J sigma_x).
OperatorMatrix cpb_hamiltonian(double e_el, double e_j);

/// Lab-frame Jaynes-Cummings Hamiltonian of one qubit and the resonator,
/// omega_r (a^dag a + 1/2) + (omega_a / 2) sigma_z + g (a^dag sigma_- + a sigma_+),
/// on protocol_layout(n_max). The other qubit is an idle spectator.
/// Throws ConfigurationError if the qubit is uncoupled.
OperatorMatrix jaynes_cummings(const DeviceParams &params, Qubit qubit);

/// The same model in the frame rotating at omega_r:
/// ((omega_a - omega_r) / 2) sigma_z + g (a^dag sigma_- + a sigma_+).
OperatorMatrix jaynes_cummings_rotating(const DeviceParams &params, Qubit qubit);

struct Drive {
    cplx epsilon;     ///< complex amplitude, MHz
    double omega_d;   ///< carrier, MHz
};

/// Sum over drives of eps a^dag e^{-i w t} + eps* a e^{+i w t}.
OperatorMatrix drive_hamiltonian(int n_max, std::span<const Drive> drives, double t);

/// Omega_R = 2 eps g / Delta_r. Throws SingularityError when Delta_r == 0.
double rabi_frequency(double epsilon, double g, double delta_r);

struct DisplacedHamiltonian {
    OperatorMatrix hamiltonian;
    double rabi_frequency;   ///< MHz
};

/// Drive-frame displaced Hamiltonian
/// Delta_r a^dag a + (Delta_a / 2) sigma_z - g (a^dag sigma_- + a sigma_+) + (Omega_R / 2) sigma_x.
DisplacedHamiltonian displaced_hamiltonian(const DeviceParams &params, Qubit qubit);

/// As above, with the drive term rotated to (Omega_R / 2)(cos(phase) sigma_x + sin(phase) sigma_y).
DisplacedHamiltonian displaced_hamiltonian(const DeviceParams &params, Qubit qubit,
                                           double drive_phase);

/// chi = g^2 / Delta with Delta = omega_a - omega_r. SingularityError at Delta == 0.
double dispersive_chi(double g, double delta);

/// omega_a + chi for `qubit`.
double dressed_qubit_frequency(const DeviceParams &params, Qubit qubit);

/// g / |Delta| above which the dispersive result is flagged.
inline constexpr double kDispersiveWarningRatio = 0.1;

struct DispersiveHamiltonian {
    OperatorMatrix hamiltonian;
    double chi;                  ///< MHz
    double dressed_frequency;    ///< omega_a + chi, MHz
    double rabi_frequency;       ///< MHz
    bool validity_warning;       ///< g / |Delta| > kDispersiveWarningRatio
};

/// Delta_r a^dag a + (Delta~_a / 2) sigma_z + (Omega_R / 2) sigma_x.
DispersiveHamiltonian dispersive_hamiltonian(const DeviceParams &params, Qubit qubit);

/// Shift of the |up,0> level obtained by diagonalizing the one-excitation
/// block of jaynes_cummings(). Linear MHz, same sign convention as chi.
double exact_dispersive_shift(const DeviceParams &params, Qubit qubit);

struct CoherenceRates {
    double gamma1;
    double gamma2;
    double gamma_phi;
};

/// gamma1 = 1/(2 pi T1), gamma2 = 1/(2 pi T2), gamma_phi = gamma2 - gamma1/2.
/// Throws UnphysicalInputError when T2 > 2 T1.
CoherenceRates rates_from_coherence_times(double t1_us, double t2_us);

struct ResonatorDecay {
    double kappa;            ///< MHz
    double photon_lifetime;  ///< us, 1/(2 pi kappa)
};

/// kappa = omega_r / Q.
ResonatorDecay kappa_from_quality(double omega_r, double quality);

struct CollapseChannel {
    double rate;             ///< MHz; the generator uses 2 pi rate
    OperatorMatrix op;       ///< unscaled jump operator
    std::string label;
};

using CollapseSet = std::vector<CollapseChannel>;

/// sqrt(kappa) a, then per coupled qubit sqrt(gamma1) sigma_- and
/// sqrt(gamma_phi / 2) sigma_z. Zero-rate channels are omitted.
CollapseSet collapse_operators(const DeviceParams &params);

/// Same, for an explicit qubit list regardless of the coupling flags.
CollapseSet collapse_operators(const DeviceParams &params, std::span<const Qubit> qubits);

/// Relaxation and dephasing of one qubit on the single-qubit layout (2).
CollapseSet qubit_collapse_operators(const DeviceParams &params, Qubit qubit);

} // namespace cqed
