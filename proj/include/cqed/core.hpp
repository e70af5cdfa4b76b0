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
 * Dense complex linear algebra over composite Hilbert spaces.
 *
 * Qubit basis convention used everywhere: index 0 = |down> (ground),
 * index 1 = |up> (excited). sigma_z = |up><up| - |down><down| and
 * sigma_plus = |up><down|. Composite indices follow the Kronecker
 * convention: the left-most subsystem is the most significant digit.
 */

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqed/errors.hpp"
#include "cqed/rng.hpp"

namespace cqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Ordered subsystem dimensions.
class HilbertLayout {
  public:
    HilbertLayout() = default;
    explicit HilbertLayout(std::vector<std::size_t> dims);

    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t subsystem_count() const { return dims_.size(); }
    std::size_t dim(std::size_t subsystem) const { return dims_.at(subsystem); }
    std::size_t total() const;

    /// Stride of one step in `subsystem` within the flat index.
    std::size_t stride(std::size_t subsystem) const;
    /// Flat index -> digit of `subsystem`.
    std::size_t digit(std::size_t flat, std::size_t subsystem) const;
    std::size_t flat_index(std::span<const std::size_t> digits) const;

    std::string to_string() const;

    friend bool operator==(const HilbertLayout &, const HilbertLayout &) = default;

  private:
    std::vector<std::size_t> dims_;
};

HilbertLayout concat(const HilbertLayout &a, const HilbertLayout &b);

/// Protocol layout (qubit1, resonator, qubit2) = (2, n_max + 1, 2).
HilbertLayout protocol_layout(int n_max);

/// Subsystem positions inside `protocol_layout`.
inline constexpr std::size_t kQubit1Subsystem = 0;
inline constexpr std::size_t kResonatorSubsystem = 1;
inline constexpr std::size_t kQubit2Subsystem = 2;

/// Pure state: amplitude vector over a layout.
class QuantumState {
  public:
    QuantumState(HilbertLayout layout, Vector amplitudes);

    /// Computational basis state with one digit per subsystem.
    static QuantumState basis(HilbertLayout layout, std::span<const std::size_t> digits);
    static QuantumState basis(HilbertLayout layout, std::initializer_list<std::size_t> digits);

    const HilbertLayout &layout() const { return layout_; }
    const Vector &amplitudes() const { return amplitudes_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    cplx amplitude(std::initializer_list<std::size_t> digits) const;

    double norm() const { return amplitudes_.norm(); }
    /// Throws ArgumentError on a zero vector.
    QuantumState &normalize();
    QuantumState normalized() const;

  private:
    HilbertLayout layout_;
    Vector amplitudes_;
};

/// Hermitian unit-trace matrix. Hermiticity (1e-9) and trace (1e-8) are
/// checked on construction; positivity is a diagnostic, see
/// min_eigenvalue(), because linear-inversion tomography may legitimately
/// produce small negative eigenvalues.
class DensityMatrix {
  public:
    DensityMatrix(HilbertLayout layout, Matrix elements);
    static DensityMatrix from_state(const QuantumState &state);

    const HilbertLayout &layout() const { return layout_; }
    const Matrix &elements() const { return elements_; }
    std::size_t dim() const { return static_cast<std::size_t>(elements_.rows()); }
    double trace() const { return elements_.trace().real(); }
    double min_eigenvalue() const;
    double purity() const;

  private:
    HilbertLayout layout_;
    Matrix elements_;
};

/// Operator on a layout. When `hermitian` is set the constructor verifies
/// it to 1e-12 relative to the largest element.
class OperatorMatrix {
  public:
    OperatorMatrix(HilbertLayout layout, Matrix elements, bool hermitian = false);

    const HilbertLayout &layout() const { return layout_; }
    const Matrix &elements() const { return elements_; }
    bool hermitian() const { return hermitian_; }
    std::size_t dim() const { return static_cast<std::size_t>(elements_.rows()); }

    OperatorMatrix adjoint() const;

  private:
    HilbertLayout layout_;
    Matrix elements_;
    bool hermitian_;
};

OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b);
OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b);
OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b);
OperatorMatrix operator*(double s, const OperatorMatrix &a);
OperatorMatrix operator*(cplx s, const OperatorMatrix &a);
QuantumState operator*(const OperatorMatrix &op, const QuantumState &state);

bool is_hermitian(const Matrix &m, double tol);
bool is_unitary(const Matrix &m, double tol);

// Single-subsystem operators. Each carries a one-entry layout.
OperatorMatrix identity(const HilbertLayout &layout);
OperatorMatrix sigma_x();
OperatorMatrix sigma_y();
OperatorMatrix sigma_z();
OperatorMatrix sigma_plus();
OperatorMatrix sigma_minus();
/// Annihilation operator on a Fock space of dimension `dim`.
OperatorMatrix destroy(std::size_t dim);
OperatorMatrix number_operator(std::size_t dim);

/// Places a single-subsystem operator at `subsystem`, identity elsewhere.
OperatorMatrix embed(const OperatorMatrix &local, const HilbertLayout &layout,
                     std::size_t subsystem);

OperatorMatrix tensor(const OperatorMatrix &a, const OperatorMatrix &b);
QuantumState tensor(const QuantumState &a, const QuantumState &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Traces out every subsystem not in `keep`. The result keeps the original
/// subsystem order regardless of the order of `keep`.
DensityMatrix partial_trace(const DensityMatrix &rho, std::vector<std::size_t> keep);

/// |<a|b>|^2, insensitive to the global phase of either argument.
double fidelity(const QuantumState &a, const QuantumState &b);
/// <a|rho|a>.
double fidelity(const QuantumState &a, const DensityMatrix &rho);
/// Mixed-mixed fidelity is not provided; always throws ArgumentError.
double fidelity(const DensityMatrix &a, const DensityMatrix &b);

cplx expectation(const QuantumState &state, const OperatorMatrix &op);
cplx expectation(const DensityMatrix &rho, const OperatorMatrix &op);

struct MeasurementResult {
    std::size_t outcome;
    double probability;
    QuantumState post_state;
};

struct MixedMeasurementResult {
    std::size_t outcome;
    double probability;
    DensityMatrix post_state;
};

/// Born probability of each projector on `state`.
std::vector<double> outcome_probabilities(const QuantumState &state,
                                          std::span<const OperatorMatrix> projectors);
std::vector<double> outcome_probabilities(const DensityMatrix &rho,
                                          std::span<const OperatorMatrix> projectors);

/// Samples a projective measurement. Projectors must be mutually
/// orthogonal to 1e-10 (ArgumentError otherwise) and their probabilities
/// must sum to 1 within `completeness_tol` (StateSupportError otherwise).
/// Probabilities are renormalized by their sum before sampling.
MeasurementResult measure_projective(const QuantumState &state,
                                     std::span<const OperatorMatrix> projectors, Rng &rng,
                                     double completeness_tol = 1e-6);
MixedMeasurementResult measure_projective(const DensityMatrix &rho,
                                          std::span<const OperatorMatrix> projectors,
                                          Rng &rng, double completeness_tol = 1e-6);

/// Wootters concurrence of a (2,2) density matrix.
double concurrence(const DensityMatrix &rho);

} // namespace cqed
