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

#include "cqed/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cqed {

namespace {

double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_same_layout(const HilbertLayout &a, const HilbertLayout &b, const char *what) {
    if (!(a == b)) {
        throw ArgumentError(std::string(what) + ": layout mismatch " + a.to_string() + " vs " +
                            b.to_string());
    }
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void check_orthogonal(std::span<const OperatorMatrix> projectors, const HilbertLayout &layout) {
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        require_same_layout(projectors[i].layout(), layout, "measure_projective");
        for (std::size_t j = i + 1; j < projectors.size(); ++j) {
            const Matrix prod = projectors[i].elements() * projectors[j].elements();
            if (max_abs(prod) > 1e-10) {
                throw ArgumentError("measure_projective: projectors " + std::to_string(i) +
                                    " and " + std::to_string(j) + " are not orthogonal");
            }
        }
    }
}

std::size_t sample_outcome(const std::vector<double> &probs, double completeness_tol, Rng &rng) {
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    if (std::abs(total - 1.0) > completeness_tol) {
        std::ostringstream msg;
        msg << "measure_projective: outcome probabilities sum to " << total;
        throw StateSupportError(msg.str());
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k] > 0.0) {
            last_nonzero = k;
        }
        acc += probs[k];
        if (u < acc) {
            return k;
        }
    }
    return last_nonzero;
}

} // namespace

// --- HilbertLayout --------------------------------------------------------

HilbertLayout::HilbertLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    for (std::size_t d : dims_) {
        if (d < 2) {
            throw LayoutError("HilbertLayout: subsystem dimension must be >= 2");
        }
    }
}

std::size_t HilbertLayout::total() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                           std::multiplies<std::size_t>());
}

std::size_t HilbertLayout::stride(std::size_t subsystem) const {
    std::size_t s = 1;
    for (std::size_t k = subsystem + 1; k < dims_.size(); ++k) {
        s *= dims_[k];
    }
    return s;
}

std::size_t HilbertLayout::digit(std::size_t flat, std::size_t subsystem) const {
    return (flat / stride(subsystem)) % dims_.at(subsystem);
}

std::size_t HilbertLayout::flat_index(std::span<const std::size_t> digits) const {
    if (digits.size() != dims_.size()) {
        throw ArgumentError("flat_index: expected " + std::to_string(dims_.size()) + " digits");
    }
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (digits[k] >= dims_[k]) {
            throw ArgumentError("flat_index: digit out of range");
        }
        flat = flat * dims_[k] + digits[k];
    }
    return flat;
}

std::string HilbertLayout::to_string() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        out << (k ? "," : "") << dims_[k];
    }
    out << ')';
    return out.str();
}

HilbertLayout concat(const HilbertLayout &a, const HilbertLayout &b) {
    std::vector<std::size_t> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return HilbertLayout(std::move(dims));
}

HilbertLayout protocol_layout(int n_max) {
    if (n_max < 1) {
        throw LayoutError("resonator truncation n_max must be >= 1");
    }
    return HilbertLayout({2, static_cast<std::size_t>(n_max) + 1, 2});
}

// --- QuantumState ---------------------------------------------------------

QuantumState::QuantumState(HilbertLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total()) {
        throw ArgumentError("QuantumState: amplitude count does not match layout " +
                            layout_.to_string());
    }
}

QuantumState QuantumState::basis(HilbertLayout layout, std::span<const std::size_t> digits) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total()));
    v(static_cast<Eigen::Index>(layout.flat_index(digits))) = 1.0;
    return QuantumState(std::move(layout), std::move(v));
}

QuantumState QuantumState::basis(HilbertLayout layout, std::initializer_list<std::size_t> digits) {
    return basis(std::move(layout), std::span<const std::size_t>(digits.begin(), digits.size()));
}

cplx QuantumState::amplitude(std::initializer_list<std::size_t> digits) const {
    return amplitudes_(static_cast<Eigen::Index>(
        layout_.flat_index(std::span<const std::size_t>(digits.begin(), digits.size()))));
}

QuantumState &QuantumState::normalize() {
    const double n = amplitudes_.norm();
    if (n == 0.0 || !std::isfinite(n)) {
        throw ArgumentError("QuantumState::normalize: zero or non-finite vector");
    }
    amplitudes_ /= n;
    return *this;
}

QuantumState QuantumState::normalized() const {
    QuantumState copy = *this;
    copy.normalize();
    return copy;
}

// --- DensityMatrix --------------------------------------------------------

DensityMatrix::DensityMatrix(HilbertLayout layout, Matrix elements)
    : layout_(std::move(layout)), elements_(std::move(elements)) {
    const auto n = static_cast<Eigen::Index>(layout_.total());
    if (elements_.rows() != n || elements_.cols() != n) {
        throw ArgumentError("DensityMatrix: shape does not match layout " + layout_.to_string());
    }
    if (!is_hermitian(elements_, 1e-9)) {
        throw ArgumentError("DensityMatrix: not Hermitian");
    }
    if (std::abs(elements_.trace() - cplx(1.0)) > 1e-8) {
        throw ArgumentError("DensityMatrix: trace deviates from 1");
    }
}

DensityMatrix DensityMatrix::from_state(const QuantumState &state) {
    const Vector &v = state.amplitudes();
    return DensityMatrix(state.layout(), v * v.adjoint());
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(elements_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::purity() const { return (elements_ * elements_).trace().real(); }

// --- OperatorMatrix -------------------------------------------------------

OperatorMatrix::OperatorMatrix(HilbertLayout layout, Matrix elements, bool hermitian)
    : layout_(std::move(layout)), elements_(std::move(elements)), hermitian_(hermitian) {
    const auto n = static_cast<Eigen::Index>(layout_.total());
    if (elements_.rows() != n || elements_.cols() != n) {
        throw ArgumentError("OperatorMatrix: shape does not match layout " + layout_.to_string());
    }
    if (hermitian_ && !is_hermitian(elements_, 1e-12 * std::max(1.0, max_abs(elements_)))) {
        throw ArgumentError("OperatorMatrix: flagged Hermitian but is not");
    }
}

OperatorMatrix OperatorMatrix::adjoint() const {
    return OperatorMatrix(layout_, elements_.adjoint(), hermitian_);
}

OperatorMatrix operator+(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_layout(a.layout(), b.layout(), "operator+");
    return OperatorMatrix(a.layout(), a.elements() + b.elements(),
                          a.hermitian() && b.hermitian());
}

OperatorMatrix operator-(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_layout(a.layout(), b.layout(), "operator-");
    return OperatorMatrix(a.layout(), a.elements() - b.elements(),
                          a.hermitian() && b.hermitian());
}

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_layout(a.layout(), b.layout(), "operator*");
    return OperatorMatrix(a.layout(), a.elements() * b.elements());
}

OperatorMatrix operator*(double s, const OperatorMatrix &a) {
    return OperatorMatrix(a.layout(), s * a.elements(), a.hermitian());
}

OperatorMatrix operator*(cplx s, const OperatorMatrix &a) {
    return OperatorMatrix(a.layout(), s * a.elements(), a.hermitian() && s.imag() == 0.0);
}

QuantumState operator*(const OperatorMatrix &op, const QuantumState &state) {
    require_same_layout(op.layout(), state.layout(), "operator* (state)");
    return QuantumState(state.layout(), op.elements() * state.amplitudes());
}

bool is_hermitian(const Matrix &m, double tol) {
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix &m, double tol) {
    return m.rows() == m.cols() &&
           max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

// --- Elementary operators -------------------------------------------------

OperatorMatrix identity(const HilbertLayout &layout) {
    const auto n = static_cast<Eigen::Index>(layout.total());
    return OperatorMatrix(layout, Matrix::Identity(n, n), true);
}

OperatorMatrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return OperatorMatrix(HilbertLayout({2}), m, true);
}

OperatorMatrix sigma_y() {
    // i(sigma_minus - sigma_plus) in the (down, up) ordering.
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0;
    return OperatorMatrix(HilbertLayout({2}), m, true);
}

OperatorMatrix sigma_z() {
    Matrix m(2, 2);
    m << -1.0, 0.0, 0.0, 1.0;
    return OperatorMatrix(HilbertLayout({2}), m, true);
}

OperatorMatrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return OperatorMatrix(HilbertLayout({2}), m);
}

OperatorMatrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return OperatorMatrix(HilbertLayout({2}), m);
}

OperatorMatrix destroy(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        m(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return OperatorMatrix(HilbertLayout({dim}), m);
}

OperatorMatrix number_operator(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        m(k, k) = static_cast<double>(k);
    }
    return OperatorMatrix(HilbertLayout({dim}), m, true);
}

OperatorMatrix embed(const OperatorMatrix &local, const HilbertLayout &layout,
                     std::size_t subsystem) {
    if (local.layout().subsystem_count() != 1) {
        throw ArgumentError("embed: local operator must act on a single subsystem");
    }
    if (subsystem >= layout.subsystem_count() || layout.dim(subsystem) != local.dim()) {
        throw ArgumentError("embed: subsystem " + std::to_string(subsystem) +
                            " incompatible with layout " + layout.to_string());
    }
    const auto left = static_cast<Eigen::Index>(layout.total() / layout.stride(subsystem) /
                                                layout.dim(subsystem));
    const auto right = static_cast<Eigen::Index>(layout.stride(subsystem));
    Matrix m = kron(kron(Matrix::Identity(left, left), local.elements()),
                    Matrix::Identity(right, right));
    return OperatorMatrix(layout, std::move(m), local.hermitian());
}

OperatorMatrix tensor(const OperatorMatrix &a, const OperatorMatrix &b) {
    return OperatorMatrix(concat(a.layout(), b.layout()), kron(a.elements(), b.elements()),
                          a.hermitian() && b.hermitian());
}

QuantumState tensor(const QuantumState &a, const QuantumState &b) {
    return QuantumState(concat(a.layout(), b.layout()), kron(a.amplitudes(), b.amplitudes()));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    return DensityMatrix(concat(a.layout(), b.layout()), kron(a.elements(), b.elements()));
}

// --- Partial trace --------------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix &rho, std::vector<std::size_t> keep) {
    const HilbertLayout &layout = rho.layout();
    if (keep.empty()) {
        throw ArgumentError("partial_trace: keep set is empty");
    }
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw ArgumentError("partial_trace: duplicate subsystem in keep set");
    }
    if (keep.back() >= layout.subsystem_count()) {
        throw ArgumentError("partial_trace: subsystem index out of range");
    }

    std::vector<std::size_t> kept_dims;
    std::vector<std::size_t> traced;
    for (std::size_t k = 0; k < layout.subsystem_count(); ++k) {
        if (std::binary_search(keep.begin(), keep.end(), k)) {
            kept_dims.push_back(layout.dim(k));
        } else {
            traced.push_back(k);
        }
    }
    HilbertLayout out_layout(kept_dims);
    if (traced.empty()) {
        return rho;
    }

    const std::size_t n = layout.total();
    // Reduced index of each flat index, and a key identifying the traced digits.
    std::vector<std::size_t> reduced(n), env(n);
    for (std::size_t flat = 0; flat < n; ++flat) {
        std::size_t r = 0, e = 0;
        for (std::size_t k = 0; k < layout.subsystem_count(); ++k) {
            const std::size_t d = layout.digit(flat, k);
            if (std::binary_search(keep.begin(), keep.end(), k)) {
                r = r * layout.dim(k) + d;
            } else {
                e = e * layout.dim(k) + d;
            }
        }
        reduced[flat] = r;
        env[flat] = e;
    }

    const auto m = static_cast<Eigen::Index>(out_layout.total());
    Matrix out = Matrix::Zero(m, m);
    const Matrix &el = rho.elements();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (env[i] == env[j]) {
                out(static_cast<Eigen::Index>(reduced[i]), static_cast<Eigen::Index>(reduced[j])) +=
                    el(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return DensityMatrix(std::move(out_layout), std::move(out));
}

// --- Fidelity / expectation -----------------------------------------------

double fidelity(const QuantumState &a, const QuantumState &b) {
    require_same_layout(a.layout(), b.layout(), "fidelity");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const QuantumState &a, const DensityMatrix &rho) {
    require_same_layout(a.layout(), rho.layout(), "fidelity");
    const Vector &v = a.amplitudes();
    return std::clamp(v.dot(rho.elements() * v).real(), 0.0, 1.0);
}

double fidelity(const DensityMatrix &, const DensityMatrix &) {
    throw ArgumentError("fidelity: mixed-mixed fidelity is not supported");
}

cplx expectation(const QuantumState &state, const OperatorMatrix &op) {
    require_same_layout(state.layout(), op.layout(), "expectation");
    const Vector &v = state.amplitudes();
    return v.dot(op.elements() * v);
}

cplx expectation(const DensityMatrix &rho, const OperatorMatrix &op) {
    require_same_layout(rho.layout(), op.layout(), "expectation");
    return (rho.elements() * op.elements()).trace();
}

// --- Measurement ----------------------------------------------------------

std::vector<double> outcome_probabilities(const QuantumState &state,
                                          std::span<const OperatorMatrix> projectors) {
    std::vector<double> probs;
    probs.reserve(projectors.size());
    for (const OperatorMatrix &p : projectors) {
        require_same_layout(p.layout(), state.layout(), "outcome_probabilities");
        probs.push_back((p.elements() * state.amplitudes()).squaredNorm());
    }
    return probs;
}

std::vector<double> outcome_probabilities(const DensityMatrix &rho,
                                          std::span<const OperatorMatrix> projectors) {
    std::vector<double> probs;
    probs.reserve(projectors.size());
    for (const OperatorMatrix &p : projectors) {
        require_same_layout(p.layout(), rho.layout(), "outcome_probabilities");
        probs.push_back(std::max(0.0, (p.elements() * rho.elements()).trace().real()));
    }
    return probs;
}

MeasurementResult measure_projective(const QuantumState &state,
                                     std::span<const OperatorMatrix> projectors, Rng &rng,
                                     double completeness_tol) {
    if (projectors.empty()) {
        throw ArgumentError("measure_projective: empty projector list");
    }
    check_orthogonal(projectors, state.layout());
    const std::vector<double> probs = outcome_probabilities(state, projectors);
    const std::size_t k = sample_outcome(probs, completeness_tol, rng);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    QuantumState post(state.layout(), projectors[k].elements() * state.amplitudes());
    post.normalize();
    return {k, probs[k] / total, std::move(post)};
}

MixedMeasurementResult measure_projective(const DensityMatrix &rho,
                                          std::span<const OperatorMatrix> projectors,
                                          Rng &rng, double completeness_tol) {
    if (projectors.empty()) {
        throw ArgumentError("measure_projective: empty projector list");
    }
    check_orthogonal(projectors, rho.layout());
    const std::vector<double> probs = outcome_probabilities(rho, projectors);
    const std::size_t k = sample_outcome(probs, completeness_tol, rng);
    const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
    const Matrix &p = projectors[k].elements();
    Matrix post = p * rho.elements() * p;
    post = 0.5 * (post + post.adjoint()).eval();
    post /= post.trace().real();
    return {k, probs[k] / total, DensityMatrix(rho.layout(), std::move(post))};
}

// --- Concurrence ----------------------------------------------------------

double concurrence(const DensityMatrix &rho) {
    if (!(rho.layout() == HilbertLayout({2, 2}))) {
        throw ArgumentError("concurrence: layout must be (2,2), got " + rho.layout().to_string());
    }
    const Matrix yy = tensor(sigma_y(), sigma_y()).elements();
    const Matrix &r = rho.elements();
    const Matrix flipped = yy * r.conjugate() * yy;

    Eigen::SelfAdjointEigenSolver<Matrix> root_solver(r);
    const Eigen::VectorXd clipped = root_solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_rho =
        root_solver.eigenvectors() * clipped.asDiagonal() * root_solver.eigenvectors().adjoint();
    Matrix m = sqrt_rho * flipped * sqrt_rho;
    m = 0.5 * (m + m.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> lambdas(4);
    for (int k = 0; k < 4; ++k) {
        lambdas[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, solver.eigenvalues()(k)));
    }
    std::sort(lambdas.rbegin(), lambdas.rend());
    return std::clamp(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0, 1.0);
}

} // namespace cqed
