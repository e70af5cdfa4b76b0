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

#include "cqed/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cqed/errors.hpp"
#include "cqed/rng.hpp"

namespace cqed {

namespace {

constexpr std::array<Pauli, 4> kPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

const HilbertLayout &pair_layout() {
    static const HilbertLayout layout({2, 2});
    return layout;
}

void require_pair(const DensityMatrix &rho, const char *what) {
    if (!(rho.layout() == pair_layout())) {
        throw ArgumentError(std::string(what) + ": expected layout (2,2), got " +
                            rho.layout().to_string());
    }
}

Matrix pauli_pair(Pauli a, Pauli b) {
    return tensor(pauli_matrix(a), pauli_matrix(b)).elements();
}

} // namespace

OperatorMatrix pauli_matrix(Pauli p) {
    switch (p) {
    case Pauli::I:
        return identity(HilbertLayout({2}));
    case Pauli::X:
        return sigma_x();
    case Pauli::Y:
        return sigma_y();
    case Pauli::Z:
        return sigma_z();
    }
    throw ArgumentError("pauli_matrix: unknown operator");
}

double TomographySetting::value() const {
    if (expectation) {
        return *expectation;
    }
    if (shots == 0) {
        throw ArgumentError("tomography setting has neither an expectation nor shots");
    }
    return 2.0 * static_cast<double>(plus_counts) / static_cast<double>(shots) - 1.0;
}

TomographyRecord exact_tomography(const DensityMatrix &rho) {
    require_pair(rho, "exact_tomography");
    TomographyRecord record;
    for (Pauli a : kPaulis) {
        for (Pauli b : kPaulis) {
            const double e = (rho.elements() * pauli_pair(a, b)).trace().real();
            record.settings.push_back({a, b, e, 0, 0});
        }
    }
    return record;
}

TomographyRecord sampled_tomography(const DensityMatrix &rho, std::uint64_t shots, Rng &rng) {
    require_pair(rho, "sampled_tomography");
    if (shots == 0) {
        throw ArgumentError("sampled_tomography: shots must be positive");
    }
    TomographyRecord record;
    for (Pauli a : kPaulis) {
        for (Pauli b : kPaulis) {
            if (a == Pauli::I && b == Pauli::I) {
                record.settings.push_back({a, b, 1.0, 0, 0});
                continue;
            }
            const double e = (rho.elements() * pauli_pair(a, b)).trace().real();
            const double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
            std::uint64_t plus = 0;
            for (std::uint64_t s = 0; s < shots; ++s) {
                plus += rng.uniform() < p_plus ? 1 : 0;
            }
            record.settings.push_back({a, b, std::nullopt, plus, shots});
        }
    }
    return record;
}

DensityMatrix tomography_reconstruct(const TomographyRecord &record) {
    std::array<std::optional<double>, 16> values{};
    for (const TomographySetting &s : record.settings) {
        const auto k = static_cast<std::size_t>(s.first) * 4 + static_cast<std::size_t>(s.second);
        if (values[k]) {
            std::ostringstream msg;
            msg << "tomography_reconstruct: setting (" << static_cast<int>(s.first) << ","
                << static_cast<int>(s.second) << ") is repeated";
            throw ArgumentError(msg.str());
        }
        values[k] = s.value();
    }
    Matrix m = Matrix::Zero(4, 4);
    for (Pauli a : kPaulis) {
        for (Pauli b : kPaulis) {
            const auto k = static_cast<std::size_t>(a) * 4 + static_cast<std::size_t>(b);
            if (!values[k]) {
                std::ostringstream msg;
                msg << "tomography_reconstruct: setting (" << static_cast<int>(a) << ","
                    << static_cast<int>(b) << ") is missing";
                throw ArgumentError(msg.str());
            }
            m += 0.25 * *values[k] * pauli_pair(a, b);
        }
    }
    m = 0.5 * (m + m.adjoint()).eval();
    const double tr = m.trace().real();
    if (!(tr > 0.0)) {
        throw ArgumentError("tomography_reconstruct: non-positive trace");
    }
    m /= tr;
    return DensityMatrix(pair_layout(), std::move(m));
}

QuantumState truncate_resonator(const QuantumState &state, double leakage_tol) {
    const HilbertLayout &layout = state.layout();
    if (layout.subsystem_count() != 2 || layout.dim(1) != 2) {
        throw LayoutError("truncate_resonator: expected (resonator, qubit), got " +
                          layout.to_string());
    }
    const Vector &amps = state.amplitudes();
    const double leak = amps.tail(amps.size() - 4).squaredNorm();
    if (leak > leakage_tol) {
        std::ostringstream msg;
        msg << "truncate_resonator: population above |1> is " << leak << " (tolerance "
            << leakage_tol << ")";
        throw StateSupportError(msg.str());
    }
    return QuantumState(pair_layout(), amps.head(4)).normalized();
}

} // namespace cqed
