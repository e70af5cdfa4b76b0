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

#include "cqed/protocol.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace cqed {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

/// Tolerance on n >= 2 population once pulses or noise are involved.
constexpr double kDrivenLeakageTol = 1e-3;

void require_protocol_layout(const HilbertLayout &layout, const char *what) {
    if (layout.subsystem_count() != 3 || layout.dim(kQubit1Subsystem) != 2 ||
        layout.dim(kQubit2Subsystem) != 2) {
        throw LayoutError(std::string(what) + ": expected (qubit1, resonator, qubit2), got " +
                          layout.to_string());
    }
}

int n_max_of(const HilbertLayout &layout) {
    return static_cast<int>(layout.dim(kResonatorSubsystem)) - 1;
}

void check_leakage(double leakage, double tol, const char *what) {
    if (leakage > tol) {
        std::ostringstream msg;
        msg << what << ": resonator population above |1> is " << leakage << " (tolerance "
            << tol << ")";
        throw StateSupportError(msg.str());
    }
}

/// Diagonal projector selecting flat indices where `keep` holds.
template <class Pred>
OperatorMatrix diagonal_projector(const HilbertLayout &layout, Pred keep) {
    const auto n = static_cast<Eigen::Index>(layout.total());
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t flat = 0; flat < layout.total(); ++flat) {
        if (keep(flat)) {
            m(static_cast<Eigen::Index>(flat), static_cast<Eigen::Index>(flat)) = 1.0;
        }
    }
    return OperatorMatrix(layout, std::move(m), true);
}

/// Excitation parity of (qubit 1, resonator): {odd (Psi sector), even (Phi sector)}.
std::vector<OperatorMatrix> parity_projectors(const HilbertLayout &layout) {
    auto excitations = [&layout](std::size_t flat) {
        return layout.digit(flat, kQubit1Subsystem) + layout.digit(flat, kResonatorSubsystem);
    };
    return {diagonal_projector(layout, [&](std::size_t f) { return excitations(f) % 2 == 1; }),
            diagonal_projector(layout, [&](std::size_t f) { return excitations(f) % 2 == 0; })};
}

/// sigma_z readout of qubit 1: {down, up}.
std::vector<OperatorMatrix> qubit1_projectors(const HilbertLayout &layout) {
    return {diagonal_projector(layout,
                               [&](std::size_t f) { return layout.digit(f, kQubit1Subsystem) == 0; }),
            diagonal_projector(layout,
                               [&](std::size_t f) { return layout.digit(f, kQubit1Subsystem) == 1; })};
}

std::vector<OperatorMatrix> phi_projectors(const HilbertLayout &layout) {
    std::vector<OperatorMatrix> all = bell_projectors(layout);
    return {all[2], all[3]};
}

std::vector<PulseSpec> correction_pulses(BellLabel label, const DeviceParams &params) {
    const double pi = std::numbers::pi;
    switch (label) {
    case BellLabel::psi_plus:
        return {};
    case BellLabel::psi_minus:
        return {compile_rotation(RotationAxis::z(), pi, params, Qubit::second)};
    case BellLabel::phi_plus:
        return {compile_rotation(RotationAxis::x(), pi, params, Qubit::second),
                compile_rotation(RotationAxis::z(), pi, params, Qubit::second)};
    case BellLabel::phi_minus:
        return {compile_rotation(RotationAxis::x(), pi, params, Qubit::second)};
    }
    return {};
}

DensityMatrix conjugate(const DensityMatrix &rho, const Matrix &u) {
    Matrix m = u * rho.elements() * u.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    m /= m.trace().real();
    return DensityMatrix(rho.layout(), std::move(m));
}

DensityMatrix project(const DensityMatrix &rho, const OperatorMatrix &p) {
    Matrix m = p.elements() * rho.elements() * p.elements();
    m = 0.5 * (m + m.adjoint()).eval();
    m /= m.trace().real();
    return DensityMatrix(rho.layout(), std::move(m));
}

std::array<double, 4> normalized(std::array<double, 4> probs) {
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double &p : probs) {
        p /= total;
    }
    return probs;
}

double probability_sum(const std::vector<double> &p) {
    return std::accumulate(p.begin(), p.end(), 0.0);
}

} // namespace

std::string_view to_string(BellLabel label) {
    switch (label) {
    case BellLabel::psi_plus:
        return "psi+";
    case BellLabel::psi_minus:
        return "psi-";
    case BellLabel::phi_plus:
        return "phi+";
    case BellLabel::phi_minus:
        return "phi-";
    }
    return "?";
}

BellLabel parse_bell_label(std::string_view text) {
    for (BellLabel label : kBellOrder) {
        if (text == to_string(label)) {
            return label;
        }
    }
    throw ArgumentError("unknown Bell label '" + std::string(text) + "'");
}

QuantumState prepare_input(cplx c0, cplx c1) {
    const double norm2 = std::norm(c0) + std::norm(c1);
    if (std::abs(norm2 - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "prepare_input: |C0|^2 + |C1|^2 = " << norm2 << ", expected 1";
        throw ArgumentError(msg.str());
    }
    Vector v(2);
    v << c0, c1;
    return QuantumState(HilbertLayout({2}), std::move(v));
}

std::pair<cplx, cplx> random_input(Rng &rng) {
    cplx c0(rng.normal(), rng.normal());
    cplx c1(rng.normal(), rng.normal());
    const double n = std::sqrt(std::norm(c0) + std::norm(c1));
    return {c0 / n, c1 / n};
}

DeviceParams tuned_for_exchange(const DeviceParams &params, Qubit qubit) {
    DeviceParams p = params;
    p.omega_a[index_of(qubit)] = p.omega_r;
    p.coupled = {false, false};
    p.coupled[index_of(qubit)] = true;
    return p;
}

QuantumState prepare_channel(ChannelMode mode, const DeviceParams &params, PulseMode pulse_mode,
                             const IntegratorConfig &cfg) {
    const HilbertLayout pair_layout({static_cast<std::size_t>(std::max(params.n_max, 0)) + 1, 2});
    if (params.n_max < 1) {
        throw LayoutError("prepare_channel: n_max must be >= 1");
    }
    if (mode == ChannelMode::ideal) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(pair_layout.total()));
        v(static_cast<Eigen::Index>(pair_layout.flat_index(std::array<std::size_t, 2>{0, 1}))) =
            kInvSqrt2;
        v(static_cast<Eigen::Index>(pair_layout.flat_index(std::array<std::size_t, 2>{1, 0}))) =
            cplx(0.0, -kInvSqrt2);
        return QuantumState(pair_layout, std::move(v));
    }
    const DeviceParams tuned = tuned_for_exchange(params, Qubit::second);
    const QuantumState start = QuantumState::basis(protocol_layout(params.n_max), {0, 0, 1});
    const QuantumState full = jc_pulse(start, Qubit::second, kHalfPi, tuned, pulse_mode, cfg);
    // Qubit 1 is untouched and still |down>: read off that slice.
    const std::size_t slice = pair_layout.total();
    return QuantumState(pair_layout, full.amplitudes().head(static_cast<Eigen::Index>(slice)))
        .normalized();
}

QuantumState bell_state(BellLabel label, int n_max) {
    if (n_max < 1) {
        throw LayoutError("bell_state: n_max must be >= 1");
    }
    const HilbertLayout layout({2, static_cast<std::size_t>(n_max) + 1});
    const auto idx = [&layout](std::size_t q, std::size_t n) {
        return static_cast<Eigen::Index>(layout.flat_index(std::array<std::size_t, 2>{q, n}));
    };
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total()));
    const cplx i(0.0, 1.0);
    switch (label) {
    case BellLabel::psi_plus:
    case BellLabel::psi_minus: {
        const double sign = label == BellLabel::psi_plus ? 1.0 : -1.0;
        v(idx(0, 1)) = -i * kInvSqrt2;
        v(idx(1, 0)) = sign * kInvSqrt2;
        break;
    }
    case BellLabel::phi_plus:
    case BellLabel::phi_minus: {
        const double sign = label == BellLabel::phi_plus ? 1.0 : -1.0;
        v(idx(0, 0)) = kInvSqrt2;
        v(idx(1, 1)) = sign * i * kInvSqrt2;
        break;
    }
    }
    return QuantumState(layout, std::move(v));
}

std::vector<OperatorMatrix> bell_projectors(const HilbertLayout &layout) {
    require_protocol_layout(layout, "bell_projectors");
    const int n_max = n_max_of(layout);
    std::vector<OperatorMatrix> out;
    out.reserve(4);
    for (BellLabel label : kBellOrder) {
        const Vector b = bell_state(label, n_max).amplitudes();
        const Matrix local = b * b.adjoint();
        Matrix full(local.rows() * 2, local.cols() * 2);
        full.setZero();
        for (Eigen::Index r = 0; r < local.rows(); ++r) {
            for (Eigen::Index c = 0; c < local.cols(); ++c) {
                full(2 * r, 2 * c) = local(r, c);
                full(2 * r + 1, 2 * c + 1) = local(r, c);
            }
        }
        out.emplace_back(layout, std::move(full), true);
    }
    return out;
}

double resonator_leakage(const QuantumState &state) {
    const HilbertLayout &layout = state.layout();
    require_protocol_layout(layout, "resonator_leakage");
    double leak = 0.0;
    for (std::size_t flat = 0; flat < layout.total(); ++flat) {
        if (layout.digit(flat, kResonatorSubsystem) >= 2) {
            leak += std::norm(state.amplitudes()(static_cast<Eigen::Index>(flat)));
        }
    }
    return leak;
}

double resonator_leakage(const DensityMatrix &rho) {
    const HilbertLayout &layout = rho.layout();
    require_protocol_layout(layout, "resonator_leakage");
    double leak = 0.0;
    for (std::size_t flat = 0; flat < layout.total(); ++flat) {
        if (layout.digit(flat, kResonatorSubsystem) >= 2) {
            const auto k = static_cast<Eigen::Index>(flat);
            leak += rho.elements()(k, k).real();
        }
    }
    return leak;
}

BellOutcome bell_measurement(const QuantumState &state, Rng &rng, double leakage_tol) {
    check_leakage(resonator_leakage(state), leakage_tol, "bell_measurement");
    const std::vector<OperatorMatrix> projectors = bell_projectors(state.layout());
    MeasurementResult m =
        measure_projective(state, projectors, rng, std::max(1e-6, 2.0 * leakage_tol));
    return {kBellOrder[m.outcome], m.probability, std::move(m.post_state)};
}

OperatorMatrix feed_forward(BellLabel label) {
    switch (label) {
    case BellLabel::psi_plus:
        return identity(HilbertLayout({2}));
    case BellLabel::psi_minus:
        return sigma_z();
    case BellLabel::phi_plus:
        return OperatorMatrix(HilbertLayout({2}), sigma_z().elements() * sigma_x().elements());
    case BellLabel::phi_minus:
        return sigma_x();
    }
    throw ArgumentError("feed_forward: unknown label");
}

std::array<BellBranch, 4> decompose_bell(const QuantumState &state, double leakage_tol) {
    const HilbertLayout &layout = state.layout();
    require_protocol_layout(layout, "decompose_bell");
    check_leakage(resonator_leakage(state), leakage_tol, "decompose_bell");
    const int n_max = n_max_of(layout);
    const Eigen::Index pair_dim = static_cast<Eigen::Index>(layout.total() / 2);
    // Rows: (qubit1, resonator) index; columns: qubit 2.
    const Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        amps(state.amplitudes().data(), pair_dim, 2);

    auto branch = [&](std::size_t k) {
        const Vector b = bell_state(kBellOrder[k], n_max).amplitudes();
        Vector cond = (b.adjoint() * amps).transpose();
        const double weight = cond.squaredNorm();
        if (weight > 0.0) {
            cond /= std::sqrt(weight);
        } else {
            cond = Vector::Zero(2);
            cond(0) = 1.0;
        }
        return BellBranch{kBellOrder[k], QuantumState(HilbertLayout({2}), std::move(cond)), weight};
    };
    return {branch(0), branch(1), branch(2), branch(3)};
}

double protocol_duration(BellLabel outcome, MeasurementMode mode, const DeviceParams &params) {
    double t = jc_pulse_duration(kHalfPi, params.g[index_of(Qubit::second)]);
    if (mode == MeasurementMode::physical &&
        (outcome == BellLabel::psi_plus || outcome == BellLabel::psi_minus)) {
        t += jc_pulse_duration(kHalfPi, params.g[index_of(Qubit::first)]);
    }
    for (const PulseSpec &p : correction_pulses(outcome, params)) {
        t += p.duration;
    }
    return t;
}

namespace {

TeleportResult run_closed(const QuantumState &input, const TeleportOptions &options,
                          const DeviceParams &params, Rng &rng) {
    const bool physical = options.mode == MeasurementMode::physical;
    const QuantumState channel =
        prepare_channel(physical ? ChannelMode::jc_pulse : ChannelMode::ideal, params,
                        PulseMode::integrated, options.integrator);
    const QuantumState joint = tensor(input, channel);
    const HilbertLayout &layout = joint.layout();

    std::array<double, 4> probs{};
    BellLabel label{};
    QuantumState post = joint;
    if (!physical) {
        check_leakage(resonator_leakage(joint), 1e-8, "run_teleportation");
        const std::vector<OperatorMatrix> projectors = bell_projectors(layout);
        const std::vector<double> p = outcome_probabilities(joint, projectors);
        std::copy(p.begin(), p.end(), probs.begin());
        MeasurementResult m = measure_projective(joint, projectors, rng);
        label = kBellOrder[m.outcome];
        post = std::move(m.post_state);
    } else {
        const std::vector<OperatorMatrix> sectors = parity_projectors(layout);
        const std::vector<double> sector_p = outcome_probabilities(joint, sectors);
        const DeviceParams tuned = tuned_for_exchange(params, Qubit::first);

        std::optional<QuantumState> psi_rotated;
        if (sector_p[0] > 0.0) {
            const QuantumState branch = (sectors[0] * joint).normalized();
            psi_rotated = jc_pulse(branch, Qubit::first, kHalfPi, tuned, PulseMode::integrated,
                                   options.integrator);
            const std::vector<double> q = outcome_probabilities(*psi_rotated, qubit1_projectors(layout));
            probs[0] = sector_p[0] * q[0];
            probs[1] = sector_p[0] * q[1];
        }
        std::optional<QuantumState> phi_branch;
        if (sector_p[1] > 0.0) {
            phi_branch = (sectors[1] * joint).normalized();
            check_leakage(resonator_leakage(*phi_branch), kDrivenLeakageTol, "run_teleportation");
            const std::vector<double> q = outcome_probabilities(*phi_branch, phi_projectors(layout));
            const double total = probability_sum(q);
            probs[2] = sector_p[1] * q[0] / total;
            probs[3] = sector_p[1] * q[1] / total;
        }

        const MeasurementResult sector = measure_projective(joint, sectors, rng);
        if (sector.outcome == 0) {
            MeasurementResult m = measure_projective(*psi_rotated, qubit1_projectors(layout), rng);
            label = m.outcome == 0 ? BellLabel::psi_plus : BellLabel::psi_minus;
            post = std::move(m.post_state);
        } else {
            MeasurementResult m =
                measure_projective(*phi_branch, phi_projectors(layout), rng, kDrivenLeakageTol);
            label = m.outcome == 0 ? BellLabel::phi_plus : BellLabel::phi_minus;
            post = std::move(m.post_state);
        }
    }

    DensityMatrix rho2 = partial_trace(DensityMatrix::from_state(post), {kQubit2Subsystem});
    if (options.feed_forward) {
        rho2 = conjugate(rho2, feed_forward(label).elements());
    }
    TeleportResult result;
    result.outcome = label;
    result.fidelity = fidelity(input, rho2);
    result.outcome_probabilities = normalized(probs);
    result.protocol_duration = physical ? protocol_duration(label, options.mode, params) : 0.0;
    result.noise_enabled = false;
    return result;
}

TeleportResult run_noisy(const QuantumState &input, const TeleportOptions &options,
                         const DeviceParams &params, Rng &rng) {
    const bool physical = options.mode == MeasurementMode::physical;
    const HilbertLayout layout = protocol_layout(params.n_max);
    const CollapseSet collapse = collapse_operators(params, kBothQubits);
    const IntegratorConfig &cfg = options.integrator;

    const QuantumState start_pair = QuantumState::basis(HilbertLayout({layout.dim(1), 2}), {0, 1});
    DensityMatrix rho = DensityMatrix::from_state(tensor(input, start_pair));
    rho = jc_pulse(rho, Qubit::second, kHalfPi, tuned_for_exchange(params, Qubit::second),
                   collapse, cfg);
    double duration = jc_pulse_duration(kHalfPi, params.g[index_of(Qubit::second)]);

    std::array<double, 4> probs{};
    BellLabel label{};
    std::optional<DensityMatrix> post;
    if (!physical) {
        check_leakage(resonator_leakage(rho), kDrivenLeakageTol, "run_teleportation");
        const std::vector<OperatorMatrix> projectors = bell_projectors(layout);
        const std::vector<double> p = outcome_probabilities(rho, projectors);
        std::copy(p.begin(), p.end(), probs.begin());
        MixedMeasurementResult m = measure_projective(rho, projectors, rng, 2.0 * kDrivenLeakageTol);
        label = kBellOrder[m.outcome];
        post = std::move(m.post_state);
    } else {
        const std::vector<OperatorMatrix> sectors = parity_projectors(layout);
        const std::vector<double> sector_p = outcome_probabilities(rho, sectors);
        std::optional<DensityMatrix> psi_rotated;
        if (sector_p[0] > 0.0) {
            psi_rotated = jc_pulse(project(rho, sectors[0]), Qubit::first, kHalfPi,
                                   tuned_for_exchange(params, Qubit::first), collapse, cfg);
            const std::vector<double> q = outcome_probabilities(*psi_rotated, qubit1_projectors(layout));
            const double total = probability_sum(q);
            probs[0] = sector_p[0] * q[0] / total;
            probs[1] = sector_p[0] * q[1] / total;
        }
        std::optional<DensityMatrix> phi_branch;
        if (sector_p[1] > 0.0) {
            phi_branch = project(rho, sectors[1]);
            check_leakage(resonator_leakage(*phi_branch), kDrivenLeakageTol, "run_teleportation");
            const std::vector<double> q = outcome_probabilities(*phi_branch, phi_projectors(layout));
            const double total = probability_sum(q);
            probs[2] = sector_p[1] * q[0] / total;
            probs[3] = sector_p[1] * q[1] / total;
        }
        const MixedMeasurementResult sector = measure_projective(rho, sectors, rng);
        if (sector.outcome == 0) {
            MixedMeasurementResult m =
                measure_projective(*psi_rotated, qubit1_projectors(layout), rng);
            label = m.outcome == 0 ? BellLabel::psi_plus : BellLabel::psi_minus;
            post = std::move(m.post_state);
            duration += jc_pulse_duration(kHalfPi, params.g[index_of(Qubit::first)]);
        } else {
            MixedMeasurementResult m =
                measure_projective(*phi_branch, phi_projectors(layout), rng, 2.0 * kDrivenLeakageTol);
            label = m.outcome == 0 ? BellLabel::phi_plus : BellLabel::phi_minus;
            post = std::move(m.post_state);
        }
    }

    // Qubit 2 evolves alone during the corrections, so its reduced state suffices.
    DensityMatrix rho2 = partial_trace(*post, {kQubit2Subsystem});
    if (options.feed_forward) {
        const CollapseSet local = qubit_collapse_operators(params, Qubit::second);
        for (const PulseSpec &pulse : correction_pulses(label, params)) {
            const Hamiltonian h = Hamiltonian::constant(pulse_hamiltonian(pulse));
            rho2 = evolve_lindblad(rho2, h, local, {0.0, pulse.duration}, cfg).final_state();
            duration += pulse.duration;
        }
    }

    TeleportResult result;
    result.outcome = label;
    result.fidelity = fidelity(input, rho2);
    result.outcome_probabilities = normalized(probs);
    result.protocol_duration = duration;
    result.noise_enabled = true;
    return result;
}

} // namespace

TeleportResult run_teleportation(cplx c0, cplx c1, const TeleportOptions &options,
                                 const DeviceParams &params, Rng &rng) {
    params.validate();
    const QuantumState input = prepare_input(c0, c1);
    return options.noise ? run_noisy(input, options, params, rng)
                         : run_closed(input, options, params, rng);
}

} // namespace cqed
