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

#include "cqed/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cqed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double inf_norm(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().rowwise().sum().maxCoeff();
}

struct StepPlan {
    std::size_t steps;
    double dt;
    std::vector<std::size_t> snapshot_steps;
};

StepPlan plan_steps(TimeSpan span, double generator_norm, const IntegratorConfig &cfg) {
    if (!(span.t1 >= span.t0)) {
        throw ArgumentError("time span must satisfy t1 >= t0");
    }
    const double length = span.t1 - span.t0;
    std::size_t steps = 1;
    if (length > 0.0) {
        double target = cfg.dt;
        if (target < 0.0) {
            throw ArgumentError("IntegratorConfig: dt must be > 0");
        }
        if (target == 0.0) {
            const double f_max = generator_norm / kTwoPi;
            target = f_max > 0.0 ? 1.0 / (cfg.steps_per_period * f_max) : length;
        }
        const double count = std::ceil(length / target - 1e-9);
        if (count > static_cast<double>(cfg.max_step_count)) {
            std::ostringstream msg;
            msg << "integration needs " << count << " steps, budget is " << cfg.max_step_count;
            throw BudgetError(msg.str());
        }
        steps = std::max<std::size_t>(1, static_cast<std::size_t>(count));
    } else {
        steps = 0;
    }
    StepPlan plan{steps, steps ? length / static_cast<double>(steps) : 0.0, {}};
    const std::size_t snaps = std::min<std::size_t>(steps + 1, std::max<std::size_t>(2, cfg.max_snapshots));
    if (steps == 0) {
        plan.snapshot_steps = {0};
        return plan;
    }
    for (std::size_t k = 0; k < snaps; ++k) {
        const auto idx = static_cast<std::size_t>(
            std::llround(static_cast<double>(k) * static_cast<double>(steps) /
                         static_cast<double>(snaps - 1)));
        plan.snapshot_steps.push_back(idx);
    }
    return plan;
}

double time_at(const StepPlan &plan, TimeSpan span, std::size_t step) {
    return step == plan.steps ? span.t1 : span.t0 + static_cast<double>(step) * plan.dt;
}

double sampled_norm(const Hamiltonian &h, TimeSpan span) {
    if (h.is_constant()) {
        return inf_norm(h.at(span.t0));
    }
    const double mid = 0.5 * (span.t0 + span.t1);
    return std::max({inf_norm(h.at(span.t0)), inf_norm(h.at(mid)), inf_norm(h.at(span.t1))});
}

} // namespace

// --- Hamiltonian ----------------------------------------------------------

Hamiltonian Hamiltonian::constant(OperatorMatrix h) {
    if (!is_hermitian(h.elements(), 1e-12 * std::max(1.0, h.elements().cwiseAbs().maxCoeff()))) {
        throw ArgumentError("Hamiltonian: operator is not Hermitian");
    }
    HilbertLayout layout = h.layout();
    return Hamiltonian(std::move(layout), h.elements(), nullptr);
}

Hamiltonian Hamiltonian::time_dependent(HilbertLayout layout, Function fn) {
    if (!fn) {
        throw ArgumentError("Hamiltonian: empty function");
    }
    return Hamiltonian(std::move(layout), Matrix(), std::move(fn));
}

Matrix Hamiltonian::at(double t) const {
    if (!fn_) {
        return fixed_;
    }
    OperatorMatrix h = fn_(t);
    if (!(h.layout() == layout_)) {
        throw ArgumentError("Hamiltonian: H(t) layout changed");
    }
    if (!is_hermitian(h.elements(), 1e-12 * std::max(1.0, h.elements().cwiseAbs().maxCoeff()))) {
        throw ArgumentError("Hamiltonian: H(t) is not Hermitian");
    }
    return h.elements();
}

// --- Unitary --------------------------------------------------------------

StateTrajectory evolve_unitary(const QuantumState &state, const Hamiltonian &h, TimeSpan span,
                               const IntegratorConfig &cfg,
                               std::span<const Observable> observables) {
    if (!(state.layout() == h.layout())) {
        throw ArgumentError("evolve_unitary: state and Hamiltonian layouts differ");
    }
    const StepPlan plan = plan_steps(span, sampled_norm(h, span), cfg);
    const cplx minus_i(0.0, -1.0);

    StateTrajectory traj;
    traj.steps = plan.steps;
    traj.dt = plan.dt;
    auto record = [&](std::size_t step, const Vector &psi) {
        QuantumState snap(state.layout(), psi);
        for (const Observable &obs : observables) {
            traj.observables[obs.name].push_back(expectation(snap, obs.op).real());
        }
        traj.times.push_back(time_at(plan, span, step));
        traj.states.push_back(std::move(snap));
    };

    Vector psi = state.amplitudes();
    std::size_t next = 0;
    if (plan.snapshot_steps[next] == 0) {
        record(0, psi);
        ++next;
    }
    const Matrix h_const = h.is_constant() ? h.at(span.t0) : Matrix();
    const double dt = plan.dt;
    for (std::size_t step = 1; step <= plan.steps; ++step) {
        const double t = span.t0 + static_cast<double>(step - 1) * dt;
        Vector k1, k2, k3, k4;
        if (h.is_constant()) {
            k1 = minus_i * (h_const * psi);
            k2 = minus_i * (h_const * (psi + 0.5 * dt * k1));
            k3 = minus_i * (h_const * (psi + 0.5 * dt * k2));
            k4 = minus_i * (h_const * (psi + dt * k3));
        } else {
            const Matrix h0 = h.at(t);
            const Matrix hm = h.at(t + 0.5 * dt);
            const Matrix h1 = h.at(t + dt);
            k1 = minus_i * (h0 * psi);
            k2 = minus_i * (hm * (psi + 0.5 * dt * k1));
            k3 = minus_i * (hm * (psi + 0.5 * dt * k2));
            k4 = minus_i * (h1 * (psi + dt * k3));
        }
        psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (next < plan.snapshot_steps.size() && plan.snapshot_steps[next] == step) {
            record(step, psi);
            ++next;
        }
    }
    traj.final_norm = psi.norm();
    traj.states.back().normalize();
    return traj;
}

// --- Lindblad -------------------------------------------------------------

DensityTrajectory evolve_lindblad(const DensityMatrix &rho, const Hamiltonian &h,
                                  const CollapseSet &collapse, TimeSpan span,
                                  const IntegratorConfig &cfg,
                                  std::span<const Observable> observables) {
    const HilbertLayout &layout = rho.layout();
    if (!(layout == h.layout())) {
        throw ArgumentError("evolve_lindblad: state and Hamiltonian layouts differ");
    }
    const auto n = static_cast<Eigen::Index>(layout.total());
    std::vector<Matrix> jumps;
    Matrix decay = Matrix::Zero(n, n);
    double dissipator_norm = 0.0;
    for (const CollapseChannel &c : collapse) {
        if (c.rate < 0.0) {
            throw ArgumentError("evolve_lindblad: negative rate for " + c.label);
        }
        if (!(c.op.layout() == layout)) {
            throw ArgumentError("evolve_lindblad: collapse operator " + c.label +
                                " has the wrong layout");
        }
        if (c.rate == 0.0) {
            continue;
        }
        const Matrix jump = std::sqrt(kTwoPi * c.rate) * c.op.elements();
        const Matrix jj = jump.adjoint() * jump;
        decay += jj;
        dissipator_norm += inf_norm(jj);
        jumps.push_back(jump);
    }
    const cplx half_i(0.0, 0.5);
    const StepPlan plan = plan_steps(span, sampled_norm(h, span) + dissipator_norm, cfg);

    DensityTrajectory traj;
    traj.steps = plan.steps;
    traj.dt = plan.dt;
    auto record = [&](std::size_t step, const Matrix &r) {
        const double tr = r.trace().real();
        if (std::abs(tr - 1.0) > 1e-7) {
            std::ostringstream msg;
            msg << "evolve_lindblad: trace drifted to " << tr;
            throw IntegrationQualityError(msg.str());
        }
        DensityMatrix snap(layout, r / tr);
        const double min_eig = snap.min_eigenvalue();
        if (min_eig < -1e-6) {
            std::ostringstream msg;
            msg << "evolve_lindblad: eigenvalue " << min_eig << " at t = "
                << time_at(plan, span, step);
            throw IntegrationQualityError(msg.str());
        }
        for (const Observable &obs : observables) {
            traj.observables[obs.name].push_back(expectation(snap, obs.op).real());
        }
        traj.times.push_back(time_at(plan, span, step));
        traj.states.push_back(std::move(snap));
    };

    // With rho Hermitian, rho H_eff^dag = (H_eff rho)^dag.
    auto rhs = [&](const Matrix &heff, const Matrix &r) {
        const Matrix x = heff * r;
        Matrix out = cplx(0.0, -1.0) * (x - x.adjoint());
        for (const Matrix &j : jumps) {
            out.noalias() += j * r * j.adjoint();
        }
        return out;
    };

    Matrix r = rho.elements();
    std::size_t next = 0;
    if (plan.snapshot_steps[next] == 0) {
        record(0, r);
        ++next;
    }
    const Matrix heff_const = h.is_constant() ? Matrix(h.at(span.t0) - half_i * decay) : Matrix();
    const double dt = plan.dt;
    for (std::size_t step = 1; step <= plan.steps; ++step) {
        const double t = span.t0 + static_cast<double>(step - 1) * dt;
        Matrix k1, k2, k3, k4;
        if (h.is_constant()) {
            k1 = rhs(heff_const, r);
            k2 = rhs(heff_const, r + 0.5 * dt * k1);
            k3 = rhs(heff_const, r + 0.5 * dt * k2);
            k4 = rhs(heff_const, r + dt * k3);
        } else {
            const Matrix h0 = h.at(t) - half_i * decay;
            const Matrix hm = h.at(t + 0.5 * dt) - half_i * decay;
            const Matrix h1 = h.at(t + dt) - half_i * decay;
            k1 = rhs(h0, r);
            k2 = rhs(hm, r + 0.5 * dt * k1);
            k3 = rhs(hm, r + 0.5 * dt * k2);
            k4 = rhs(h1, r + dt * k3);
        }
        r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        r = 0.5 * (r + r.adjoint()).eval();
        if (next < plan.snapshot_steps.size() && plan.snapshot_steps[next] == step) {
            record(step, r);
            ++next;
        }
    }
    traj.final_norm = r.trace().real();
    return traj;
}

// --- Jaynes-Cummings pulses -----------------------------------------------

double jc_pulse_duration(double angle, double g) {
    if (!(g > 0.0)) {
        throw ConfigurationError("exchange pulse needs a nonzero coupling g");
    }
    return angle / (2.0 * kTwoPi * g);
}

namespace {

void check_jc_inputs(const HilbertLayout &layout, Qubit qubit, double angle,
                     const DeviceParams &params, bool require_resonance) {
    if (!params.coupled[index_of(qubit)]) {
        throw ConfigurationError("jc_pulse: qubit " + std::to_string(index_of(qubit) + 1) +
                                 " is uncoupled from the resonator");
    }
    if (!(layout == protocol_layout(params.n_max))) {
        throw LayoutError("jc_pulse: state layout " + layout.to_string() +
                          " is not the protocol layout for n_max = " +
                          std::to_string(params.n_max));
    }
    if (angle < 0.0 || !std::isfinite(angle)) {
        throw ArgumentError("jc_pulse: angle must be finite and >= 0");
    }
    const double detuning = params.omega_a[index_of(qubit)] - params.omega_r;
    if (require_resonance && std::abs(detuning) > 1e-9 * params.omega_r) {
        std::ostringstream msg;
        msg << "jc_pulse: qubit " << index_of(qubit) + 1 << " is detuned by " << detuning
            << " MHz from the resonator";
        throw ConfigurationError(msg.str());
    }
}

} // namespace

QuantumState jc_pulse(const QuantumState &state, Qubit qubit, double angle,
                      const DeviceParams &params, PulseMode mode, const IntegratorConfig &cfg) {
    check_jc_inputs(state.layout(), qubit, angle, params, mode == PulseMode::integrated);
    if (angle == 0.0) {
        return state;
    }
    const double duration = jc_pulse_duration(angle, params.g[index_of(qubit)]);
    if (mode == PulseMode::integrated) {
        const Hamiltonian h = Hamiltonian::constant(jaynes_cummings_rotating(params, qubit));
        return evolve_unitary(state, h, {0.0, duration}, cfg).final_state();
    }

    // Closed form on each exchange pair {|up,n>, |down,n+1>}.
    const HilbertLayout &layout = state.layout();
    const std::size_t q_sub = subsystem_of(qubit);
    const std::size_t n_max = layout.dim(kResonatorSubsystem) - 1;
    Vector out = state.amplitudes();
    const Vector &in = state.amplitudes();
    for (std::size_t flat = 0; flat < layout.total(); ++flat) {
        const std::size_t photons = layout.digit(flat, kResonatorSubsystem);
        if (layout.digit(flat, q_sub) != 1 || photons >= n_max) {
            continue;
        }
        const std::size_t partner =
            flat - layout.stride(q_sub) + layout.stride(kResonatorSubsystem);
        const double theta = 0.5 * angle * std::sqrt(static_cast<double>(photons + 1));
        const double c = std::cos(theta);
        const cplx s(0.0, -std::sin(theta));
        const auto i = static_cast<Eigen::Index>(flat);
        const auto j = static_cast<Eigen::Index>(partner);
        out(i) = c * in(i) + s * in(j);
        out(j) = s * in(i) + c * in(j);
    }
    return QuantumState(layout, std::move(out));
}

DensityMatrix jc_pulse(const DensityMatrix &rho, Qubit qubit, double angle,
                       const DeviceParams &params, const CollapseSet &collapse,
                       const IntegratorConfig &cfg) {
    check_jc_inputs(rho.layout(), qubit, angle, params, true);
    if (angle == 0.0) {
        return rho;
    }
    const double duration = jc_pulse_duration(angle, params.g[index_of(qubit)]);
    const Hamiltonian h = Hamiltonian::constant(jaynes_cummings_rotating(params, qubit));
    return evolve_lindblad(rho, h, collapse, {0.0, duration}, cfg).final_state();
}

} // namespace cqed
