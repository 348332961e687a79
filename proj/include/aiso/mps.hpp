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

// Open-boundary matrix product states and operators.
//
// Site k of an MPS holds two matrices A_k[s] (s = local basis state) of shape
// D_{k} x D_{k+1}, with D_0 = D_n = 1, and
//
//     <s_0 ... s_{n-1}|psi> = A_0[s_0] A_1[s_1] ... A_{n-1}[s_{n-1}].
//
// An MPO site holds four matrices W_k[2*a + b] for the local entry <a|.|b>.
// Truncation only drops singular values below `kMpsCutoff` times the largest,
// so every operation here is exact to round-off.

#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "aiso/common.hpp"
#include "aiso/linalg.hpp"

namespace aiso {

inline constexpr double kMpsCutoff = 1e-13;

class Mps {
  public:
    Mps() = default;

    static Mps product_state(const Bitstring &bits);
    /// Exact left-to-right SVD decomposition of a dense state.
    static Mps from_statevector(const StateVector &psi);

    int num_qubits() const { return static_cast<int>(sites_.size()); }
    const std::array<Eigen::MatrixXcd, 2> &site(int k) const { return sites_[static_cast<size_t>(k)]; }
    std::array<Eigen::MatrixXcd, 2> &mutable_site(int k) { return sites_[static_cast<size_t>(k)]; }
    /// Bond dimensions D_1 .. D_{n-1}.
    std::vector<int> bond_dims() const;
    int max_bond() const;

    /// Applies a 1-qubit gate.
    void apply_1q(int qubit, const Eigen::Matrix2cd &gate);
    /// Applies a 2-qubit gate on adjacent qubits (q, q + 1); the gate's first
    /// index belongs to q.
    void apply_2q_adjacent(int q, const Eigen::Matrix4cd &gate);
    /// Any pair of distinct qubits; routes with swaps when not adjacent.
    void apply_2q(int q0, int q1, const Eigen::Matrix4cd &gate);

    /// <this|other>.
    cplx inner(const Mps &other) const;
    StateVector to_statevector() const;

  private:
    std::vector<std::array<Eigen::MatrixXcd, 2>> sites_;
};

class Mpo {
  public:
    Mpo() = default;
    explicit Mpo(std::vector<std::array<Eigen::MatrixXcd, 4>> sites) : sites_(std::move(sites)) {}

    static Mpo identity(int n);

    int num_qubits() const { return static_cast<int>(sites_.size()); }
    const std::array<Eigen::MatrixXcd, 4> &site(int k) const { return sites_[static_cast<size_t>(k)]; }
    std::vector<int> bond_dims() const;
    int max_bond() const;

    /// <phi| W |phi>, contracted site by site.
    cplx expectation(const Mps &phi) const;
    /// <bra| W |ket>.
    cplx sandwich(const Mps &bra, const Mps &ket) const;
    cplx trace() const;
    DenseOperator to_dense() const;

    /// Two SVD sweeps dropping singular values below kMpsCutoff (relative).
    void compress();

  private:
    std::vector<std::array<Eigen::MatrixXcd, 4>> sites_;
};

}  // namespace aiso
