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

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cqed/hamiltonians.hpp"

using namespace cqed;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd spectrum(const OperatorMatrix &h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.elements());
    return solver.eigenvalues();
}

bool hermitian_1e12(const OperatorMatrix &h) {
    return (h.elements() - h.elements().adjoint()).cwiseAbs().maxCoeff() <=
           1e-12 * std::max(1.0, h.elements().cwiseAbs().maxCoeff());
}

std::size_t flat(const HilbertLayout &l, std::size_t q1, std::size_t n, std::size_t q2) {
    const std::array<std::size_t, 3> d{q1, n, q2};
    return l.flat_index(d);
}

} // namespace

TEST_CASE("charge-box Hamiltonian") {
    Eigen::VectorXd e = spectrum(cpb_hamiltonian(0.0, 3.0));
    CHECK(e(0) == doctest::Approx(-kTwoPi * 1.5));
    CHECK(e(1) == doctest::Approx(kTwoPi * 1.5));
    const Matrix diag = cpb_hamiltonian(2.0, 0.0).elements();
    CHECK(std::abs(diag(0, 1)) == 0.0);
    e = spectrum(cpb_hamiltonian(3.0, 4.0));
    CHECK(e(1) == doctest::Approx(kTwoPi * 2.5));
    CHECK(hermitian_1e12(cpb_hamiltonian(1.3, -0.4)));
}

TEST_CASE("Jaynes-Cummings") {
    DeviceParams p = default_device();
    p.n_max = 3;
    const HilbertLayout l = protocol_layout(p.n_max);

    SUBCASE("decoupled spectrum") {
        p.g = {0.0, 0.0};
        const Matrix h = jaynes_cummings(p, Qubit::first).elements();
        CHECK((h - Matrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
        const double expected = p.omega_r * (2 + 0.5) + 0.5 * p.omega_a[0];
        CHECK(h(flat(l, 1, 2, 0), flat(l, 1, 2, 0)).real() == doctest::Approx(kTwoPi * expected));
    }
    SUBCASE("matrix element") {
        const Matrix h = jaynes_cummings(p, Qubit::first).elements();
        CHECK(h(flat(l, 0, 1, 0), flat(l, 1, 0, 0)).real() == doctest::Approx(kTwoPi * p.g[0]));
        const Matrix h2 = jaynes_cummings(p, Qubit::second).elements();
        CHECK(h2(flat(l, 0, 1, 0), flat(l, 0, 0, 1)).real() == doctest::Approx(kTwoPi * p.g[1]));
    }
    SUBCASE("resonant vacuum Rabi splitting") {
        p.omega_a[0] = p.omega_r;
        const Matrix h = jaynes_cummings(p, Qubit::first).elements();
        const auto i = static_cast<Eigen::Index>(flat(l, 1, 0, 0));
        const auto j = static_cast<Eigen::Index>(flat(l, 0, 1, 0));
        Eigen::Matrix2cd block;
        block << h(i, i), h(i, j), h(j, i), h(j, j);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> s(block);
        CHECK((s.eigenvalues()(1) - s.eigenvalues()(0)) ==
              doctest::Approx(2.0 * kTwoPi * p.g[0]).epsilon(1e-12));
    }
    SUBCASE("excitation number is conserved") {
        for (Qubit q : kBothQubits) {
            const Matrix h = jaynes_cummings(p, q).elements();
            const Matrix n = embed(number_operator(l.dim(1)), l, 1).elements() +
                             embed(OperatorMatrix(HilbertLayout({2}),
                                                  sigma_plus().elements() * sigma_minus().elements()),
                                   l, subsystem_of(q))
                                 .elements();
            const Matrix comm = h * n - n * h;
            CHECK(comm.cwiseAbs().maxCoeff() <= 1e-10 * h.cwiseAbs().maxCoeff());
        }
    }
    CHECK(hermitian_1e12(jaynes_cummings(p, Qubit::first)));
    CHECK(hermitian_1e12(jaynes_cummings_rotating(p, Qubit::second)));
    SUBCASE("uncoupled qubit") {
        p.coupled = {true, false};
        CHECK_THROWS_AS(jaynes_cummings(p, Qubit::second), ConfigurationError);
    }
}

TEST_CASE("drive Hamiltonian") {
    const int n_max = 3;
    const std::vector<Drive> one{{cplx(2.0, 0.5), 100.0}};
    const Matrix at0 = drive_hamiltonian(n_max, one, 0.0).elements();
    const HilbertLayout l = protocol_layout(n_max);
    const Matrix a = embed(destroy(4), l, 1).elements();
    const Matrix expected = kTwoPi * (cplx(2.0, 0.5) * a.adjoint() + cplx(2.0, -0.5) * a);
    CHECK((at0 - expected).cwiseAbs().maxCoeff() < 1e-10);

    const std::vector<Drive> other{{cplx(-1.0, 1.0), 37.0}};
    const std::vector<Drive> both{one[0], other[0]};
    const double t = 0.0123;
    const Matrix sum = drive_hamiltonian(n_max, one, t).elements() +
                       drive_hamiltonian(n_max, other, t).elements();
    CHECK((drive_hamiltonian(n_max, both, t).elements() - sum).cwiseAbs().maxCoeff() < 1e-10);

    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        CHECK(hermitian_1e12(drive_hamiltonian(n_max, both, rng.uniform())));
    }
}

TEST_CASE("displaced Hamiltonian") {
    DeviceParams p = default_device();
    const double delta_r = p.omega_r - p.omega_d;
    p.epsilon = 50.0 * std::abs(delta_r) / (2.0 * p.g[0]);
    const DisplacedHamiltonian dh = displaced_hamiltonian(p, Qubit::first);
    CHECK(std::abs(dh.rabi_frequency) == doctest::Approx(50.0));
    CHECK(p.epsilon / std::abs(delta_r) == doctest::Approx(1.47).epsilon(0.01));
    CHECK(hermitian_1e12(dh.hamiltonian));

    p.epsilon = 0.0;
    CHECK(displaced_hamiltonian(p, Qubit::first).rabi_frequency == 0.0);

    p.omega_d = p.omega_r;
    CHECK_THROWS_AS(displaced_hamiltonian(p, Qubit::first), SingularityError);
}

TEST_CASE("dispersive Hamiltonian") {
    CHECK(dispersive_chi(100.0, 2000.0) == doctest::Approx(5.0));
    CHECK_THROWS_AS(dispersive_chi(10.0, 0.0), SingularityError);

    DeviceParams p = default_device();
    p.g[0] = 0.0;
    DispersiveHamiltonian dh = dispersive_hamiltonian(p, Qubit::first);
    CHECK(dh.chi == 0.0);
    CHECK(dh.dressed_frequency == p.omega_a[0]);
    CHECK_FALSE(dh.validity_warning);

    p.g[0] = 0.2 * (p.omega_a[0] - p.omega_r);
    dh = dispersive_hamiltonian(p, Qubit::first);
    CHECK(dh.validity_warning);
    CHECK(hermitian_1e12(dh.hamiltonian));

    p.omega_a[0] = p.omega_r;
    CHECK_THROWS_AS(dispersive_hamiltonian(p, Qubit::first), SingularityError);
}

TEST_CASE("exact dispersive shift") {
    DeviceParams p = default_device();
    for (double sign : {1.0, -1.0}) {
        p.omega_a[0] = p.omega_r + sign * 1500.0;
        const double delta = p.omega_a[0] - p.omega_r;
        for (double ratio : {0.01, 0.02, 0.05, 0.1}) {
            p.g[0] = ratio * std::abs(delta);
            const double closed = 0.5 * delta * (std::sqrt(1.0 + 4.0 * ratio * ratio) - 1.0);
            const double exact = exact_dispersive_shift(p, Qubit::first);
            CHECK(exact == doctest::Approx(closed).epsilon(1e-9));
            const double chi = dispersive_chi(p.g[0], delta);
            CHECK(std::abs(exact - chi) / std::abs(chi) <= 2.0 * ratio * ratio);
        }
    }
}

TEST_CASE("coherence rates") {
    const CoherenceRates r = rates_from_coherence_times(7.3, 0.5);
    CHECK(r.gamma1 == doctest::Approx(0.0218).epsilon(0.005));
    CHECK(std::abs(r.gamma1 - 0.02) / 0.02 <= 0.10);
    CHECK(std::abs(r.gamma_phi - 0.31) / 0.31 <= 0.03);
    CHECK(1.0 / (kTwoPi * r.gamma1) == doctest::Approx(7.3).epsilon(1e-12));
    CHECK(1.0 / (kTwoPi * r.gamma2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.gamma2 == doctest::Approx(r.gamma1 / 2 + r.gamma_phi).epsilon(1e-12));

    CHECK(std::abs(rates_from_coherence_times(2.0, 4.0).gamma_phi) < 1e-15);
    CHECK_THROWS_AS(rates_from_coherence_times(2.0, 6.0), UnphysicalInputError);
    CHECK_THROWS_AS(rates_from_coherence_times(0.0, 1.0), ArgumentError);
}

TEST_CASE("resonator decay") {
    const ResonatorDecay d = kappa_from_quality(5000.0, 1e6);
    CHECK(d.kappa == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(std::abs(d.photon_lifetime - 31.0) / 31.0 <= 0.03);
    CHECK(kappa_from_quality(5000.0, 1e7).kappa == doctest::Approx(d.kappa / 10).epsilon(1e-12));
    CHECK(5000.0 / d.kappa == doctest::Approx(1e6).epsilon(1e-12));
    CHECK_THROWS_AS(kappa_from_quality(5000.0, 0.0), ArgumentError);
}

TEST_CASE("collapse operators") {
    DeviceParams p = default_device();
    DeviceParams quiet = p;
    quiet.kappa = 0.0;
    quiet.gamma1 = {0.0, 0.0};
    quiet.gamma_phi = {0.0, 0.0};
    CHECK(collapse_operators(quiet).empty());

    p.coupled = {true, false};
    const CollapseSet one = collapse_operators(p);
    CHECK(one.size() == 3);
    for (const CollapseChannel &c : one) {
        CHECK(c.op.layout() == protocol_layout(p.n_max));
        CHECK(c.rate >= 0.0);
    }
    CHECK(collapse_operators(p, kBothQubits).size() == 5);
    CHECK(qubit_collapse_operators(p, Qubit::second).size() == 2);
}

TEST_CASE("device validation") {
    DeviceParams p = default_device();
    CHECK_NOTHROW(p.validate());
    p.n_max = 0;
    CHECK_THROWS_AS(p.validate(), ArgumentError);
    p = default_device();
    p.kappa = -1.0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("kappa"), ArgumentError);
}
