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

// Depth-d brickwork circuits of random 2-qubit Cliffords.
//
// Layer l acts on pairs (q, q+1) with q = l mod 2, l mod 2 + 2, ... while
// q + 1 < n. Layer 0 is applied to the state first, so U = L_{d-1} ... L_0.
// With odd n the edge qubit without a partner idles in that layer.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aiso/clifford.hpp"
#include "aiso/common.hpp"
#include "aiso/linalg.hpp"
#include "aiso/pauli.hpp"

namespace aiso {

class BrickworkLayout {
  public:
    BrickworkLayout() = default;
    /// Throws std::invalid_argument unless n >= 2, d >= 1 and every qubit is
    /// touched by at least one block.
    BrickworkLayout(int n, int depth);

    int num_qubits() const { return n_; }
    int depth() const { return d_; }
    /// First qubit of each block in `layer`, left to right.
    const std::vector<int> &layer(int layer) const { return layers_[static_cast<size_t>(layer)]; }
    int num_blocks() const { return num_blocks_; }
    /// Offset of the first block of `layer` in the flattened (layer-major) list.
    int layer_offset(int layer) const { return offsets_[static_cast<size_t>(layer)]; }
    /// Identifier stored in shadow-store headers.
    static constexpr const char *kDescriptor = "brick-even0";

    bool operator==(const BrickworkLayout &o) const { return n_ == o.n_ && d_ == o.d_; }

  private:
    int n_ = 0;
    int d_ = 0;
    int num_blocks_ = 0;
    std::vector<std::vector<int>> layers_;
    std::vector<int> offsets_;
};

class BrickworkCircuit {
  public:
    BrickworkCircuit() = default;
    /// `blocks` holds one canonical Clifford index per block, layer-major.
    BrickworkCircuit(BrickworkLayout layout, std::vector<uint16_t> blocks);

    static BrickworkCircuit sample(const BrickworkLayout &layout, Rng &rng);
    /// Every block the identity Clifford (test hook).
    static BrickworkCircuit identity(const BrickworkLayout &layout);

    const BrickworkLayout &layout() const { return layout_; }
    const std::vector<uint16_t> &blocks() const { return blocks_; }
    int block(int layer, int i) const { return blocks_[static_cast<size_t>(layout_.layer_offset(layer) + i)]; }

    /// amp <- U amp.
    void apply_inplace(Eigen::VectorXcd &amp) const;
    /// amp <- U^dagger amp.
    void apply_adjoint_inplace(Eigen::VectorXcd &amp) const;
    DenseOperator to_dense() const;

    bool operator==(const BrickworkCircuit &) const = default;

  private:
    BrickworkLayout layout_;
    std::vector<uint16_t> blocks_;
};

/// Letter-form Hermitian Pauli with a real sign, bit layout as PauliString.
struct SignedPauli {
    uint64_t x = 0;
    uint64_t z = 0;
    int sign = 1;
};

/// Conjugates a letter-form Pauli by U^dagger (P -> U^dagger P U), in place.
void conjugate_by_adjoint(const BrickworkCircuit &circuit, SignedPauli &p);
/// Conjugates a letter-form Pauli by U (P -> U P U^dagger), in place.
void conjugate_by_circuit(const BrickworkCircuit &circuit, SignedPauli &p);

struct StabilizerTerm {
    PauliString pauli;  ///< phase 0
    int sign = 1;
};

/// The 2^n signed stabilizers S of sigma = U^dagger |u><u| U, so that
/// sigma = 2^-n sum_S sign * S, generated from the conjugated (-1)^{u_q} Z_q
/// and listed in Gray-code order.
/// U^dagger ((-1)^{u_q} Z_q) U for q = 0..n-1.
std::vector<SignedPauli> stabilizer_generators(const BrickworkCircuit &circuit, const Bitstring &u);

std::vector<StabilizerTerm> stabilizer_decomposition(const BrickworkCircuit &circuit, const Bitstring &u);

/// Same group as raw (x, z, sign) triples; visits all 2^n elements in Gray-code
/// order through `visit(x, z, sign)`. Allocation-free hot path.
template <typename Visit>
void for_each_stabilizer(const SignedPauli *generators, int n, Visit &&visit);

}  // namespace aiso

#include "aiso/brickwork_inl.hpp"
