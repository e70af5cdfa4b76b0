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

// Independent reference computations for tests. Nothing here calls the
// library's linear algebra; amplitudes are tracked by hand on explicit
// index maps.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "cqed/rng.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Index of |q1, n, q2> with n in {0, 1}: 4 q1 + 2 n + q2.
inline std::size_t idx8(int q1, int n, int q2) {
    return static_cast<std::size_t>(4 * q1 + 2 * n + q2);
}

/// (C0 |down> + C1 |up>) (x) (|0,up> - i |1,down>) / sqrt 2 on the 8-level space.
inline std::array<cplx, 8> joint_state(cplx c0, cplx c1) {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::array<cplx, 8> psi{};
    const cplx c[2] = {c0, c1};
    for (int q1 = 0; q1 < 2; ++q1) {
        psi[idx8(q1, 0, 1)] += c[q1] * r;
        psi[idx8(q1, 1, 0)] += -i * c[q1] * r;
    }
    return psi;
}

/// Bell vectors on (q1, n) as 4 amplitudes indexed 2 q1 + n, in the order
/// Psi+, Psi-, Phi+, Phi-.
inline std::array<std::array<cplx, 4>, 4> bell_vectors() {
    const double r = 1.0 / std::sqrt(2.0);
    const cplx i(0.0, 1.0);
    std::array<std::array<cplx, 4>, 4> b{};
    b[0][1] = -i * r;
    b[0][2] = r;
    b[1][1] = -i * r;
    b[1][2] = -r;
    b[2][0] = r;
    b[2][3] = i * r;
    b[3][0] = r;
    b[3][3] = -i * r;
    return b;
}

struct Branch {
    double probability;
    std::array<cplx, 8> post;   ///< normalized post-measurement state
};

/// Bell-measurement branches of `psi` by explicit amplitude bookkeeping.
inline std::array<Branch, 4> bell_branches(const std::array<cplx, 8> &psi) {
    const auto b = bell_vectors();
    std::array<Branch, 4> out{};
    for (int k = 0; k < 4; ++k) {
        // Conditional qubit-2 amplitudes <B_k| psi.
        cplx cond[2] = {0.0, 0.0};
        for (int q1 = 0; q1 < 2; ++q1) {
            for (int n = 0; n < 2; ++n) {
                for (int q2 = 0; q2 < 2; ++q2) {
                    cond[q2] += std::conj(b[k][2 * q1 + n]) * psi[idx8(q1, n, q2)];
                }
            }
        }
        const double p = std::norm(cond[0]) + std::norm(cond[1]);
        out[k].probability = p;
        for (int q1 = 0; q1 < 2; ++q1) {
            for (int n = 0; n < 2; ++n) {
                for (int q2 = 0; q2 < 2; ++q2) {
                    out[k].post[idx8(q1, n, q2)] = b[k][2 * q1 + n] * cond[q2] / std::sqrt(p);
                }
            }
        }
    }
    return out;
}

/// Hermitian 2x2 Pauli set in this library's basis (index 0 = down).
inline std::array<std::array<cplx, 4>, 4> paulis() {
    const cplx i(0.0, 1.0);
    return {{{1, 0, 0, 1}, {0, 1, 1, 0}, {0, i, -i, 0}, {-1, 0, 0, 1}}};
}

} // namespace oracle
