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
 * Fixed-step RK4 propagation of pure states and density matrices, resonant
 * Jaynes-Cummings pulses, and sinusoid fitting of oscillation records.
 */

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cqed/core.hpp"
#include "cqed/hamiltonians.hpp"

namespace cqed {

/// Angular-frequency operator, constant or time dependent (t in us).
class Hamiltonian {
  public:
    using Function = std::function<OperatorMatrix(double)>;

    static Hamiltonian constant(OperatorMatrix h);
    static Hamiltonian time_dependent(HilbertLayout layout, Function fn);

    const HilbertLayout &layout() const { return layout_; }
    bool is_constant() const { return !fn_; }

    /// H(t); throws ArgumentError if the returned operator is not Hermitian.
    Matrix at(double t) const;

  private:
    Hamiltonian(HilbertLayout layout, Matrix fixed, Function fn)
        : layout_(std::move(layout)), fixed_(std::move(fixed)), fn_(std::move(fn)) {}

    HilbertLayout layout_;
    Matrix fixed_;
    Function fn_;
};

struct TimeSpan {
    double t0;
    double t1;
};

struct IntegratorConfig {
    /// Step in us. Zero selects 1 / (steps_per_period * f_max), where f_max
    /// bounds the largest linear frequency of the generator.
    double dt = 0.0;
    double steps_per_period = 1000.0;
    std::size_t max_step_count = 20'000'000;
    std::size_t max_snapshots = 2000;
};

struct Observable {
    std::string name;
    OperatorMatrix op;
};

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::map<std::string, std::vector<double>> observables;
    std::size_t steps = 0;
    double dt = 0.0;
    /// Norm (pure) or trace (mixed) of the final state before renormalization.
    double final_norm = 1.0;

    const State &final_state() const { return states.back(); }
};

using StateTrajectory = Trajectory<QuantumState>;
using DensityTrajectory = Trajectory<DensityMatrix>;

/// d psi / dt = -i H(t) psi.
StateTrajectory evolve_unitary(const QuantumState &state, const Hamiltonian &h, TimeSpan span,
                               const IntegratorConfig &cfg = {},
                               std::span<const Observable> observables = {});

/// d rho / dt = -i [H, rho] + sum_k 2 pi rate_k (L rho L^dag - {L^dag L, rho} / 2).
/// The state is symmetrized after every step. A snapshot with an eigenvalue
/// below -1e-6 raises IntegrationQualityError.
DensityTrajectory evolve_lindblad(const DensityMatrix &rho, const Hamiltonian &h,
                                  const CollapseSet &collapse, TimeSpan span,
                                  const IntegratorConfig &cfg = {},
                                  std::span<const Observable> observables = {});

enum class PulseMode { ideal, integrated };

/// Duration (us) of a resonant exchange pulse of `angle`: angle / (2 * 2 pi g).
double jc_pulse_duration(double angle, double g);

/// Resonant Jaynes-Cummings exchange between `qubit` and the resonator for
/// jc_pulse_duration(angle, g). With angle = pi/2 the pair {|up,0>, |down,1>}
/// is mixed with equal weights. Throws ConfigurationError for an uncoupled
/// qubit, and in integrated mode for a qubit detuned from the resonator.
QuantumState jc_pulse(const QuantumState &state, Qubit qubit, double angle,
                      const DeviceParams &params, PulseMode mode,
                      const IntegratorConfig &cfg = {});

/// The integrated pulse under the collapse channels `collapse`.
DensityMatrix jc_pulse(const DensityMatrix &rho, Qubit qubit, double angle,
                       const DeviceParams &params, const CollapseSet &collapse,
                       const IntegratorConfig &cfg = {});

struct OscillationFit {
    double frequency;      ///< MHz
    double amplitude;
    double phase;          ///< y = amplitude sin(2 pi f t + phase) + offset
    double offset;
    double rms_residual;
};

/// Least-squares sinusoid fit. Needs >= 10 samples spanning >= 2 periods;
/// throws FitError for flat records or a search that does not converge.
OscillationFit fit_oscillation(std::span<const double> times, std::span<const double> values);

} // namespace cqed
