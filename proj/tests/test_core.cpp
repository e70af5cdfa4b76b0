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

#include "cqed/core.hpp"
#include "oracles.hpp"

using namespace cqed;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

Matrix random_hermitian_psd(std::size_t n, Rng &rng) {
    Matrix a(n, n);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            a(r, c) = cplx(rng.normal(), rng.normal());
        }
    }
    Matrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

Matrix random_unitary(std::size_t n, Rng &rng) {
    Matrix a(n, n);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            a(r, c) = cplx(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    return qr.householderQ() * Matrix::Identity(n, n);
}

QuantumState channel_pair_state() {
    Vector v = Vector::Zero(4);
    v(1) = kR;                  // |0, up>
    v(2) = cplx(0.0, -kR);      // |1, down>
    return QuantumState(HilbertLayout({2, 2}), v);
}

} // namespace

TEST_CASE("layout basics") {
    HilbertLayout l({2, 3, 2});
    CHECK(l.total() == 12);
    CHECK(l.stride(0) == 6);
    CHECK(l.stride(2) == 1);
    const std::array<std::size_t, 3> digits{1, 2, 0};
    CHECK(l.flat_index(digits) == 10);
    CHECK(l.digit(10, 1) == 2);
    CHECK_THROWS_AS(HilbertLayout({2, 1}), LayoutError);
    CHECK_THROWS_AS(protocol_layout(0), LayoutError);
    CHECK(protocol_layout(1) == HilbertLayout({2, 2, 2}));
}

TEST_CASE("normalize") {
    Vector v(2);
    v << 3.0, cplx(0.0, 4.0);
    QuantumState s(HilbertLayout({2}), v);
    s.normalize();
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    CHECK_THROWS_AS(QuantumState(HilbertLayout({2}), Vector::Zero(2)).normalize(), ArgumentError);
}

TEST_CASE("tensor") {
    const OperatorMatrix i2 = identity(HilbertLayout({2}));
    const OperatorMatrix i3 = identity(HilbertLayout({3}));
    const OperatorMatrix i6 = tensor(i2, i3);
    CHECK(i6.layout() == HilbertLayout({2, 3}));
    CHECK((i6.elements() - Matrix::Identity(6, 6)).norm() < 1e-15);

    const QuantumState up0 = tensor(QuantumState::basis(HilbertLayout({2}), {1}),
                                    QuantumState::basis(HilbertLayout({2}), {0}));
    const QuantumState out = tensor(sigma_z(), identity(HilbertLayout({2}))) * up0;
    CHECK((out.amplitudes() - up0.amplitudes()).norm() < 1e-15);

    SUBCASE("associativity") {
        Rng rng(11);
        const OperatorMatrix a(HilbertLayout({2}), random_hermitian_psd(2, rng));
        const OperatorMatrix b(HilbertLayout({3}), random_hermitian_psd(3, rng));
        const OperatorMatrix c(HilbertLayout({2}), random_hermitian_psd(2, rng));
        const Matrix left = tensor(tensor(a, b), c).elements();
        const Matrix right = tensor(a, tensor(b, c)).elements();
        CHECK((left - right).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("left factor is most significant") {
        const QuantumState s = tensor(QuantumState::basis(HilbertLayout({2}), {1}),
                                      QuantumState::basis(HilbertLayout({3}), {2}));
        CHECK(std::abs(s.amplitudes()(5) - 1.0) < 1e-15);
    }
}

TEST_CASE("partial trace") {
    Rng rng(5);
    const DensityMatrix ra(HilbertLayout({2}), random_hermitian_psd(2, rng));
    const DensityMatrix rb(HilbertLayout({3}), random_hermitian_psd(3, rng));
    const DensityMatrix rab = tensor(ra, rb);
    CHECK((partial_trace(rab, {0}).elements() - ra.elements()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((partial_trace(rab, {1}).elements() - rb.elements()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((partial_trace(rab, {0, 1}).elements() - rab.elements()).cwiseAbs().maxCoeff() < 1e-15);

    const DensityMatrix ch = DensityMatrix::from_state(channel_pair_state());
    const DensityMatrix q = partial_trace(ch, {1});
    CHECK((q.elements() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(partial_trace(rab, {}), ArgumentError);
    CHECK_THROWS_AS(partial_trace(rab, {2}), ArgumentError);
    CHECK_THROWS_AS(partial_trace(rab, {0, 0}), ArgumentError);

    SUBCASE("kept order and trace") {
        const DensityMatrix three(HilbertLayout({2, 3, 2}),
                                  random_hermitian_psd(12, rng));
        const DensityMatrix r = partial_trace(three, {2, 0});
        CHECK(r.layout() == HilbertLayout({2, 2}));
        CHECK(std::abs(r.trace() - 1.0) < 1e-10);
    }
}

TEST_CASE("fidelity") {
    const HilbertLayout q({2});
    const QuantumState down = QuantumState::basis(q, {0});
    const QuantumState up = QuantumState::basis(q, {1});
    Vector v(2);
    v << kR, kR;
    const QuantumState plus(q, v);
    CHECK(fidelity(plus, plus) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(down, up) == doctest::Approx(0.0));
    CHECK(fidelity(down, plus) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity(down, DensityMatrix::from_state(plus)) == doctest::Approx(0.5).epsilon(1e-12));

    QuantumState phased(q, plus.amplitudes() * std::polar(1.0, 0.7));
    CHECK(std::abs(fidelity(phased, down) - fidelity(plus, down)) < 1e-12);
    CHECK(std::abs(fidelity(phased, plus) - fidelity(plus, phased)) < 1e-12);

    CHECK_THROWS_AS(fidelity(DensityMatrix::from_state(up), DensityMatrix::from_state(up)),
                    ArgumentError);
    CHECK_THROWS_AS(fidelity(down, QuantumState::basis(HilbertLayout({3}), {0})), ArgumentError);
}

TEST_CASE("expectation") {
    const HilbertLayout q({2});
    CHECK(expectation(QuantumState::basis(q, {1}), sigma_z()).real() == doctest::Approx(1.0));
    CHECK(expectation(QuantumState::basis(HilbertLayout({3}), {1}), number_operator(3)).real() ==
          doctest::Approx(1.0));
    Vector v(2);
    v << kR, kR;
    const cplx sx = expectation(QuantumState(q, v), sigma_x());
    CHECK(sx.real() == doctest::Approx(1.0));
    CHECK(std::abs(sx.imag()) < 1e-10);
    CHECK_THROWS_AS(expectation(QuantumState::basis(q, {0}), number_operator(3)), ArgumentError);
}

TEST_CASE("operators") {
    CHECK(sigma_plus().elements()(1, 0) == cplx(1.0));
    CHECK(sigma_z().elements()(0, 0) == cplx(-1.0));
    const Matrix a = destroy(4).elements();
    const Matrix comm = a * a.adjoint() - a.adjoint() * a;
    for (Eigen::Index k = 0; k < 3; ++k) {
        CHECK(std::abs(comm(k, k) - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(OperatorMatrix(HilbertLayout({2}), sigma_plus().elements(), true),
                    ArgumentError);
}

TEST_CASE("projective measurement") {
    const HilbertLayout q({2});
    Rng rng(1);
    SUBCASE("identity projector") {
        Vector v(2);
        v << kR, cplx(0.0, kR);
        const QuantumState s(q, v);
        const std::vector<OperatorMatrix> p{identity(q)};
        const MeasurementResult m = measure_projective(s, p, rng);
        CHECK(m.outcome == 0);
        CHECK(m.probability == doctest::Approx(1.0));
        CHECK((m.post_state.amplitudes() - v).norm() < 1e-12);
    }
    SUBCASE("non-orthogonal projectors") {
        Matrix plus = 0.5 * (Matrix::Identity(2, 2) + sigma_x().elements());
        Matrix down = Matrix::Zero(2, 2);
        down(0, 0) = 1.0;
        const std::vector<OperatorMatrix> p{OperatorMatrix(q, plus, true),
                                            OperatorMatrix(q, down, true)};
        CHECK_THROWS_AS(measure_projective(QuantumState::basis(q, {0}), p, rng), ArgumentError);
    }
    SUBCASE("incomplete support") {
        Matrix down = Matrix::Zero(2, 2);
        down(0, 0) = 1.0;
        const std::vector<OperatorMatrix> p{OperatorMatrix(q, down, true)};
        CHECK_THROWS_AS(measure_projective(QuantumState::basis(q, {1}), p, rng),
                        StateSupportError);
    }
    SUBCASE("determinism") {
        Vector v(2);
        v << kR, kR;
        const QuantumState s(q, v);
        Matrix down = Matrix::Zero(2, 2), up = Matrix::Zero(2, 2);
        down(0, 0) = 1.0;
        up(1, 1) = 1.0;
        const std::vector<OperatorMatrix> p{OperatorMatrix(q, down, true),
                                            OperatorMatrix(q, up, true)};
        std::vector<std::size_t> first, second;
        Rng a(99), b(99);
        for (int k = 0; k < 10; ++k) {
            first.push_back(measure_projective(s, p, a).outcome);
            second.push_back(measure_projective(s, p, b).outcome);
        }
        CHECK(first == second);
    }
}

TEST_CASE("Bell outcome frequencies on the joint state") {
    // Joint state (qubit1, resonator, qubit2) with n_max = 1, built by hand.
    const auto psi8 = oracle::joint_state(cplx(0.6, 0.0), cplx(0.0, 0.8));
    Vector v(8);
    for (int k = 0; k < 8; ++k) {
        v(k) = psi8[static_cast<std::size_t>(k)];
    }
    const HilbertLayout layout = protocol_layout(1);
    const QuantumState s(layout, v);
    std::vector<OperatorMatrix> projectors;
    for (const auto &b : oracle::bell_vectors()) {
        Matrix p = Matrix::Zero(8, 8);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                for (int q2 = 0; q2 < 2; ++q2) {
                    p(2 * i + q2, 2 * j + q2) = b[static_cast<std::size_t>(i)] *
                                                std::conj(b[static_cast<std::size_t>(j)]);
                }
            }
        }
        projectors.emplace_back(layout, p, true);
    }
    for (double prob : outcome_probabilities(s, projectors)) {
        CHECK(prob == doctest::Approx(0.25).epsilon(1e-12));
    }
    constexpr int kTrials = 10000;
    std::array<int, 4> counts{};
    Rng rng(2024);
    for (int t = 0; t < kTrials; ++t) {
        ++counts[measure_projective(s, projectors, rng).outcome];
    }
    const double bound = 3.0 * std::sqrt(0.25 * 0.75 / kTrials);
    for (int c : counts) {
        CHECK(std::abs(c / double(kTrials) - 0.25) <= bound);
    }
}

TEST_CASE("concurrence") {
    const HilbertLayout pair({2, 2});
    CHECK(concurrence(DensityMatrix::from_state(QuantumState::basis(pair, {0, 0}))) ==
          doctest::Approx(0.0));
    Vector bell = Vector::Zero(4);
    bell(0) = kR;
    bell(3) = kR;
    const DensityMatrix phi = DensityMatrix::from_state(QuantumState(pair, bell));
    CHECK(std::abs(concurrence(phi) - 1.0) < 1e-8);

    for (double p : {0.2, 0.5, 0.8}) {
        const Matrix werner = p * phi.elements() + (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        CHECK(std::abs(concurrence(DensityMatrix(pair, werner)) - expected) < 1e-8);
    }

    SUBCASE("local unitary invariance") {
        Rng rng(77);
        for (int k = 0; k < 20; ++k) {
            const DensityMatrix rho(pair, random_hermitian_psd(4, rng));
            const Matrix u = tensor(OperatorMatrix(HilbertLayout({2}), random_unitary(2, rng)),
                                    OperatorMatrix(HilbertLayout({2}), random_unitary(2, rng)))
                                 .elements();
            const DensityMatrix rotated(pair, u * rho.elements() * u.adjoint());
            CHECK(std::abs(concurrence(rotated) - concurrence(rho)) <= 1e-8);
        }
    }
    CHECK_THROWS_AS(concurrence(DensityMatrix::from_state(QuantumState::basis(HilbertLayout({4}), {0}))),
                    ArgumentError);
}

TEST_CASE("density matrix construction") {
    Matrix m = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix(HilbertLayout({2}), m), ArgumentError);
    m *= 0.5;
    m(0, 1) = 0.3;
    CHECK_THROWS_AS(DensityMatrix(HilbertLayout({2}), m), ArgumentError);
}
