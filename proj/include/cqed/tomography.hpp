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
 * Two-subsystem Pauli tomography by linear inversion.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "cqed/core.hpp"

namespace cqed {

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

OperatorMatrix pauli_matrix(Pauli p);

struct TomographySetting {
    Pauli first;
    Pauli second;
    std::optional<double> expectation;   ///< exact value, if known
    std::uint64_t plus_counts = 0;       ///< +1 outcomes, used when no expectation
    std::uint64_t shots = 0;

    /// Expectation, or 2 plus_counts / shots - 1.
    double value() const;
};

struct TomographyRecord {
    std::vector<TomographySetting> settings;
};

/// All 16 settings with exact expectations of `rho` over layout (2,2).
TomographyRecord exact_tomography(const DensityMatrix &rho);

/// All 16 settings with `shots` sampled +-1 outcomes each (identity pair exact).
TomographyRecord sampled_tomography(const DensityMatrix &rho, std::uint64_t shots, Rng &rng);

/// rho = (1/4) sum <P_i (x) P_j> P_i (x) P_j, symmetrized, unit trace.
/// ArgumentError when a setting is missing or repeated. Negative eigenvalues
/// are left in place.
DensityMatrix tomography_reconstruct(const TomographyRecord &record);

/// Restricts a (resonator, qubit) state to resonator levels {0, 1}, giving a
/// (2,2) state. StateSupportError when more than `leakage_tol` lies above.
QuantumState truncate_resonator(const QuantumState &state, double leakage_tol = 1e-8);

} // namespace cqed
