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

#include "cqed/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cqed {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ModeOps {
    HilbertLayout layout;
    OperatorMatrix a;
    OperatorMatrix n;
};

ModeOps mode_ops(int n_max) {
    HilbertLayout layout = protocol_layout(n_max);
    const std::size_t dim = layout.dim(kResonatorSubsystem);
    return {layout, embed(destroy(dim), layout, kResonatorSubsystem),
            embed(number_operator(dim), layout, kResonatorSubsystem)};
}

void require_coupled(const DeviceParams &params, Qubit qubit, const char *what) {
    if (!params.coupled[index_of(qubit)]) {
        throw ConfigurationError(std::string(what) + ": qubit " +
                                 std::to_string(index_of(qubit) + 1) +
                                 " is uncoupled from the resonator");
    }
}

/// a^dag sigma_- + a sigma_+ for one qubit.
Matrix exchange_term(const ModeOps &ops, Qubit qubit) {
    const std::size_t sub = subsystem_of(qubit);
    const Matrix sm = embed(sigma_minus(), ops.layout, sub).elements();
    const Matrix sp = embed(sigma_plus(), ops.layout, sub).elements();
    const Matrix &a = ops.a.elements();
    return a.adjoint() * sm + a * sp;
}

Matrix hermitize(const Matrix &m) { return 0.5 * (m + m.adjoint()); }

void check_nonnegative(double v, const std::string &name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ArgumentError("DeviceParams: " + name + " must be finite and >= 0");
    }
}

} // namespace

void DeviceParams::validate() const {
    if (!(omega_r > 0.0) || !std::isfinite(omega_r)) {
        throw ArgumentError("DeviceParams: omega_r must be > 0");
    }
    for (std::size_t q = 0; q < 2; ++q) {
        const std::string suffix = "[" + std::to_string(q) + "]";
        if (!(omega_a[q] > 0.0) || !std::isfinite(omega_a[q])) {
            throw ArgumentError("DeviceParams: omega_a" + suffix + " must be > 0");
        }
        check_nonnegative(g[q], "g" + suffix);
        check_nonnegative(gamma1[q], "gamma1" + suffix);
        check_nonnegative(gamma_phi[q], "gamma_phi" + suffix);
    }
    check_nonnegative(kappa, "kappa");
    check_nonnegative(epsilon, "epsilon");
    check_nonnegative(omega_d, "omega_d");
    check_nonnegative(bias_shift, "bias_shift");
    if (n_max < 1) {
        throw ArgumentError("DeviceParams: n_max must be >= 1");
    }
}

DeviceParams default_device() {
    DeviceParams p;
    p.omega_r = 5000.0;
    p.omega_a = {6000.0, 7000.0};
    p.g = {17.0, 17.0};
    p.kappa = kappa_from_quality(p.omega_r, 1e6).kappa;
    const CoherenceRates rates = rates_from_coherence_times(7.3, 0.5);
    p.gamma1 = {rates.gamma1, rates.gamma1};
    p.gamma_phi = {rates.gamma_phi, rates.gamma_phi};
    p.omega_d = dressed_qubit_frequency(p, Qubit::first);
    // eps / |Delta_r| = 1.47 puts the Rabi frequency of qubit 1 at ~50 MHz.
    p.epsilon = 1.47 * std::abs(p.omega_r - p.omega_d);
    p.n_max = 2;
    p.coupled = {true, true};
    p.bias_shift = 25.0;
    return p;
}

OperatorMatrix cpb_hamiltonian(double e_el, double e_j) {
    const Matrix h = -0.5 * kTwoPi * (e_el * sigma_z().elements() + e_j * sigma_x().elements());
    return OperatorMatrix(HilbertLayout({2}), h, true);
}

OperatorMatrix jaynes_cummings(const DeviceParams &params, Qubit qubit) {
    require_coupled(params, qubit, "jaynes_cummings");
    const ModeOps ops = mode_ops(params.n_max);
    const auto n = static_cast<Eigen::Index>(ops.layout.total());
    const Matrix sz = embed(sigma_z(), ops.layout, subsystem_of(qubit)).elements();
    const std::size_t q = index_of(qubit);
    Matrix h = params.omega_r * (ops.n.elements() + 0.5 * Matrix::Identity(n, n)) +
               0.5 * params.omega_a[q] * sz + params.g[q] * exchange_term(ops, qubit);
    return OperatorMatrix(ops.layout, hermitize(kTwoPi * h), true);
}

OperatorMatrix jaynes_cummings_rotating(const DeviceParams &params, Qubit qubit) {
    require_coupled(params, qubit, "jaynes_cummings_rotating");
    const ModeOps ops = mode_ops(params.n_max);
    const Matrix sz = embed(sigma_z(), ops.layout, subsystem_of(qubit)).elements();
    const std::size_t q = index_of(qubit);
    Matrix h = 0.5 * (params.omega_a[q] - params.omega_r) * sz +
               params.g[q] * exchange_term(ops, qubit);
    return OperatorMatrix(ops.layout, hermitize(kTwoPi * h), true);
}

OperatorMatrix drive_hamiltonian(int n_max, std::span<const Drive> drives, double t) {
    const ModeOps ops = mode_ops(n_max);
    const auto n = static_cast<Eigen::Index>(ops.layout.total());
    Matrix h = Matrix::Zero(n, n);
    const Matrix &a = ops.a.elements();
    for (const Drive &d : drives) {
        const cplx phase = std::polar(1.0, -kTwoPi * d.omega_d * t);
        const cplx coeff = d.epsilon * phase;
        h += coeff * a.adjoint() + std::conj(coeff) * a;
    }
    return OperatorMatrix(ops.layout, hermitize(kTwoPi * h), true);
}

double rabi_frequency(double epsilon, double g, double delta_r) {
    if (delta_r == 0.0) {
        throw SingularityError("Rabi frequency 2 eps g / Delta_r is undefined at Delta_r = 0");
    }
    return 2.0 * epsilon * g / delta_r;
}

DisplacedHamiltonian displaced_hamiltonian(const DeviceParams &params, Qubit qubit) {
    return displaced_hamiltonian(params, qubit, 0.0);
}

DisplacedHamiltonian displaced_hamiltonian(const DeviceParams &params, Qubit qubit,
                                           double drive_phase) {
    const std::size_t q = index_of(qubit);
    const double delta_r = params.omega_r - params.omega_d;
    const double delta_a = params.omega_a[q] - params.omega_d;
    const double omega_rabi = rabi_frequency(params.epsilon, params.g[q], delta_r);

    const ModeOps ops = mode_ops(params.n_max);
    const std::size_t sub = subsystem_of(qubit);
    const Matrix sz = embed(sigma_z(), ops.layout, sub).elements();
    const Matrix sdrive = std::cos(drive_phase) * embed(sigma_x(), ops.layout, sub).elements() +
                          std::sin(drive_phase) * embed(sigma_y(), ops.layout, sub).elements();
    Matrix h = delta_r * ops.n.elements() + 0.5 * delta_a * sz + 0.5 * omega_rabi * sdrive;
    if (params.coupled[q]) {
        h -= params.g[q] * exchange_term(ops, qubit);
    }
    return {OperatorMatrix(ops.layout, hermitize(kTwoPi * h), true), omega_rabi};
}

double dispersive_chi(double g, double delta) {
    if (delta == 0.0) {
        throw SingularityError("dispersive shift g^2 / Delta is undefined at Delta = 0");
    }
    return g * g / delta;
}

double dressed_qubit_frequency(const DeviceParams &params, Qubit qubit) {
    const std::size_t q = index_of(qubit);
    return params.omega_a[q] + dispersive_chi(params.g[q], params.omega_a[q] - params.omega_r);
}

DispersiveHamiltonian dispersive_hamiltonian(const DeviceParams &params, Qubit qubit) {
    const std::size_t q = index_of(qubit);
    const double delta = params.omega_a[q] - params.omega_r;
    const double chi = dispersive_chi(params.g[q], delta);
    const double dressed = params.omega_a[q] + chi;
    const double delta_r = params.omega_r - params.omega_d;
    const double omega_rabi = rabi_frequency(params.epsilon, params.g[q], delta_r);

    const ModeOps ops = mode_ops(params.n_max);
    const std::size_t sub = subsystem_of(qubit);
    const Matrix sz = embed(sigma_z(), ops.layout, sub).elements();
    const Matrix sx = embed(sigma_x(), ops.layout, sub).elements();
    Matrix h = delta_r * ops.n.elements() + 0.5 * (dressed - params.omega_d) * sz +
               0.5 * omega_rabi * sx;
    const bool warn = params.g[q] / std::abs(delta) > kDispersiveWarningRatio;
    return {OperatorMatrix(ops.layout, hermitize(kTwoPi * h), true), chi, dressed, omega_rabi,
            warn};
}

double exact_dispersive_shift(const DeviceParams &params, Qubit qubit) {
    DeviceParams p = params;
    p.coupled[index_of(qubit)] = true;
    const Matrix h = jaynes_cummings(p, qubit).elements() / kTwoPi;
    const HilbertLayout layout = protocol_layout(p.n_max);

    std::array<std::size_t, 3> up0{0, 0, 0};
    std::array<std::size_t, 3> down1{0, 1, 0};
    up0[subsystem_of(qubit)] = 1;
    const auto i = static_cast<Eigen::Index>(layout.flat_index(up0));
    const auto j = static_cast<Eigen::Index>(layout.flat_index(down1));

    Eigen::Matrix2cd block;
    block << h(i, i), h(i, j), h(j, i), h(j, j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block);
    // Follow the eigenvector with the larger |up,0> weight.
    const int k = std::norm(solver.eigenvectors()(0, 0)) >= std::norm(solver.eigenvectors()(0, 1))
                      ? 0
                      : 1;
    return solver.eigenvalues()(k) - h(i, i).real();
}

CoherenceRates rates_from_coherence_times(double t1_us, double t2_us) {
    if (!(t1_us > 0.0) || !(t2_us > 0.0)) {
        throw ArgumentError("coherence times must be > 0");
    }
    if (t2_us > 2.0 * t1_us) {
        std::ostringstream msg;
        msg << "T2 = " << t2_us << " us exceeds 2 T1 = " << 2.0 * t1_us << " us";
        throw UnphysicalInputError(msg.str());
    }
    const double gamma1 = 1.0 / (kTwoPi * t1_us);
    const double gamma2 = 1.0 / (kTwoPi * t2_us);
    return {gamma1, gamma2, std::max(0.0, gamma2 - 0.5 * gamma1)};
}

ResonatorDecay kappa_from_quality(double omega_r, double quality) {
    if (!(quality > 0.0)) {
        throw ArgumentError("quality factor must be > 0");
    }
    const double kappa = omega_r / quality;
    return {kappa, 1.0 / (kTwoPi * kappa)};
}

CollapseSet collapse_operators(const DeviceParams &params) {
    std::vector<Qubit> qubits;
    for (Qubit q : kBothQubits) {
        if (params.coupled[index_of(q)]) {
            qubits.push_back(q);
        }
    }
    return collapse_operators(params, qubits);
}

CollapseSet collapse_operators(const DeviceParams &params, std::span<const Qubit> qubits) {
    const HilbertLayout layout = protocol_layout(params.n_max);
    CollapseSet set;
    if (params.kappa > 0.0) {
        set.push_back({params.kappa,
                       embed(destroy(layout.dim(kResonatorSubsystem)), layout, kResonatorSubsystem),
                       "kappa"});
    }
    for (Qubit q : qubits) {
        const std::size_t i = index_of(q);
        const std::string tag = std::to_string(i + 1);
        if (params.gamma1[i] > 0.0) {
            set.push_back(
                {params.gamma1[i], embed(sigma_minus(), layout, subsystem_of(q)), "gamma1_q" + tag});
        }
        if (params.gamma_phi[i] > 0.0) {
            set.push_back({0.5 * params.gamma_phi[i], embed(sigma_z(), layout, subsystem_of(q)),
                           "gamma_phi_q" + tag});
        }
    }
    return set;
}

CollapseSet qubit_collapse_operators(const DeviceParams &params, Qubit qubit) {
    const std::size_t i = index_of(qubit);
    CollapseSet set;
    if (params.gamma1[i] > 0.0) {
        set.push_back({params.gamma1[i], sigma_minus(), "gamma1"});
    }
    if (params.gamma_phi[i] > 0.0) {
        set.push_back({0.5 * params.gamma_phi[i], sigma_z(), "gamma_phi"});
    }
    return set;
}

} // namespace cqed
