// Copyright 2026 The AISO Workbench Authors
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

// The 2-qubit Clifford group: tableaus, the canonical enumeration of all
// 11520 elements, uniform sampling and Pauli conjugation.
//
// A tableau stores the signed images U P U^dagger of the generators
// X0, Z0, X1, Z1. The canonical order sorts tableaus lexicographically by
// (key(X0'), key(Z0'), key(X1'), key(Z1')) where for an image with letters
// (a, b) and sign s,
//
//     key = (4 * code(a) + code(b)) * 2 + (s < 0),   code: I=0 X=1 Y=2 Z=3.
//
// The identity tableau sits at kIdentityClifford2.

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "aiso/common.hpp"
#include "aiso/linalg.hpp"
#include "aiso/pauli.hpp"

namespace aiso {

inline constexpr int kNumClifford2 = 11520;

/// Position of the identity in the canonical enumeration (checked at startup
/// of the table build and frozen by tests).
inline constexpr int kIdentityClifford2 = 2498;

struct CliffordTableau2 {
    /// Images of X0, Z0, X1, Z1; each a 2-qubit Pauli with phase 0 or 2.
    std::array<PauliString, 4> images;

    static CliffordTableau2 identity();
    /// Checks generator commutation relations and Hermiticity of the images.
    bool is_valid() const;
    bool operator==(const CliffordTableau2 &) const = default;
};

/// All 11520 tableaus in canonical order. Built once; shared read-only.
const std::vector<CliffordTableau2> &enumerate_clifford2();

/// Canonical index of a tableau; throws std::invalid_argument if invalid.
int clifford2_index(const CliffordTableau2 &t);
const CliffordTableau2 &clifford2_from_index(int index);

int sample_clifford2_index(Rng &rng);
CliffordTableau2 sample_uniform_clifford2(Rng &rng);

/// U P U^dagger for any 2-qubit Pauli (phase carried through).
PauliString conjugate_pauli(const CliffordTableau2 &t, const PauliString &p);

/// A 4x4 unitary realizing the tableau. Global phase: the first nonzero entry
/// of the first column is real and positive.
DenseOperator tableau_to_dense(const CliffordTableau2 &t);

/// Hot-path view of one group element. A 2-qubit letter code is
/// (xbits << 2) | zbits with bit 1 of each pair belonging to the first qubit,
/// so code = 4 * (x0 x1) + (z0 z1). Conjugation of a Hermitian letter-form
/// Pauli yields a Hermitian letter-form Pauli times a sign.
struct Clifford2Entry {
    Eigen::Matrix4cd unitary;
    std::array<uint8_t, 16> fwd_code;  ///< U P U^dagger
    std::array<int8_t, 16> fwd_sign;
    std::array<uint8_t, 16> inv_code;  ///< U^dagger P U
    std::array<int8_t, 16> inv_sign;
};

/// Per-index tables for all 11520 elements. If the environment variable
/// AISO_CACHE_DIR names a directory, the enumeration is cached there.
const std::vector<Clifford2Entry> &clifford2_tables();

}  // namespace aiso
