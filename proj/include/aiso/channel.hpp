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

// The measurement channel of the brickwork shadow ensemble.
//
// The channel is diagonal in the Pauli basis: Delta(P) = w(s) P where s is the
// support pattern of P and w(s) the probability that U P U^dagger is a string
// of I and Z. Because a uniformly random 2-qubit Clifford sends any
// non-identity Pauli to each of the 15 others with equal chance, the pattern
// of P evolves as a Markov chain, block by block:
//
//     (0,0) -> (0,0)                               with probability 1
//     otherwise -> (0,1) 1/5, (1,0) 1/5, (1,1) 3/5
//
// and a final pattern f is diagonal with probability (1/3)^|f|. The table of
// all 2^n weights comes from a backward pass over the layers.
//
// Pattern masks use the PauliString bit layout (qubit q at bit n-1-q).

#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aiso/brickwork.hpp"
#include "aiso/linalg.hpp"
#include "aiso/mps.hpp"

namespace aiso {

inline constexpr int kMaxWeightTableQubits = 20;

class PatternWeightTable {
  public:
    PatternWeightTable() = default;
    PatternWeightTable(BrickworkLayout layout, std::vector<double> weights);

    const BrickworkLayout &layout() const { return layout_; }
    int num_qubits() const { return layout_.num_qubits(); }
    double weight(uint64_t pattern) const { return w_[pattern]; }
    double inverse_weight(uint64_t pattern) const { return inv_[pattern]; }
    const std::vector<double> &weights() const { return w_; }
    const std::vector<double> &inverse_weights() const { return inv_; }
    double min_weight() const;

  private:
    BrickworkLayout layout_;
    std::vector<double> w_;
    std::vector<double> inv_;
};

PatternWeightTable pattern_weights(const BrickworkLayout &layout);

/// Fraction of sampled circuits mapping a fixed Pauli (Z on each qubit of
/// `pattern`) to an I/Z string, with its binomial standard error.
std::pair<double, double> monte_carlo_weight(const BrickworkLayout &layout, uint64_t pattern, int64_t samples,
                                             Rng &rng);

DenseOperator apply_channel(const PatternWeightTable &table, const DenseOperator &op);
/// Throws std::domain_error if any weight is not strictly positive.
DenseOperator apply_inverse_channel(const PatternWeightTable &table, const DenseOperator &op);

/// Delta^{-1} as a matrix product superoperator:
///
///     Delta^{-1} = sum_s G_0[s_0] ... G_{n-1}[s_{n-1}]  Pi_{s_0} (x) ... (x) Pi_{s_{n-1}}
///
/// with Pi_0(A) = tr(A)/2 I and Pi_1 = id - Pi_0 on each site. The cores are
/// an exact tensor-train decomposition of s -> 1/w(s) (SVD with relative
/// cutoff 1e-13), so the bond dimension is whatever that function needs;
/// measured values are recorded in docs.
class ChannelMpo {
  public:
    ChannelMpo() = default;
    explicit ChannelMpo(std::vector<std::array<Eigen::MatrixXd, 2>> cores) : cores_(std::move(cores)) {}

    int num_qubits() const { return static_cast<int>(cores_.size()); }
    const std::array<Eigen::MatrixXd, 2> &core(int k) const { return cores_[static_cast<size_t>(k)]; }
    std::vector<int> bond_dims() const;
    int max_bond() const;
    /// Contracts the cores for one pattern.
    double value(uint64_t pattern) const;

    /// Applies the superoperator to a dense operator site by site.
    DenseOperator apply(const DenseOperator &op) const;

  private:
    std::vector<std::array<Eigen::MatrixXd, 2>> cores_;
};

ChannelMpo channel_mpo(const PatternWeightTable &table);

}  // namespace aiso
