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


#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "aiso/common.hpp"
#include "aiso/linalg.hpp"
#include "aiso/mps.hpp"

namespace aiso {

enum class AnsatzFamily { ALA, MERA, HEA, TTN };

std::string to_string(AnsatzFamily family);
/// Case-insensitive: "ala", "mera", "hea", "ttn".
AnsatzFamily parse_ansatz_family(std::string_view name);

/// Two-qubit subcircuit used by ALA, MERA and TTN.
/// Block4 runs Ry(t0) x Ry(t1), then CNOT (control = first target), then Ry(t2) x Ry(t3).
/// Block8 is two Block4 in a row (circuit synthesis).
enum class BlockTemplate { Block4, Block8 };

int block_arity(BlockTemplate block);

enum class GateKind { Block, Ry, Rz, Cnot };

struct GateSpec {
    GateKind kind = GateKind::Block;
    std::array<int, 2> targets{0, 0};
    int num_targets = 2;
    int first_param = 0;  ///< slots first_param .. first_param + arity - 1
    int arity = 0;
};

struct AnsatzDescriptor {
    AnsatzFamily family = AnsatzFamily::ALA;
    BlockTemplate block = BlockTemplate::Block4;
    int n = 0;
    int layers = 0;
    int num_params = 0;
    /// In time order: the first entry acts first.
    std::vector<GateSpec> gates;
};

/// ALA: `layers` brick sublayers alternating between pair offsets 0 and 1.
/// HEA: per layer Rz then Ry on every qubit, then a CNOT chain (q, q + 1).
/// TTN: binary tree leaves to root, repeated `layers` times. n a power of 2.
/// MERA: per scale, disentanglers then isometries, down to a top block. n a power of 2.
AnsatzDescriptor build_ansatz(AnsatzFamily family, int n, int layers, BlockTemplate block = BlockTemplate::Block4);

/// Real 4x4 matrix of a Block4 with the given angles, index 2 * bit(first) + bit(second).
Eigen::Matrix4d block4_matrix(double t0, double t1, double t2, double t3);
Eigen::Matrix2d ry_matrix(double theta);
Eigen::Matrix2cd rz_matrix(double theta);

enum class Direction { Forward, Adjoint };

/// Applies U(theta) or U(theta)^dagger to the qubits offset .. offset + n - 1 of `amp`
/// (a register of `total_qubits`).
void apply_ansatz_inplace(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, Eigen::VectorXcd &amp,
                          int total_qubits, Direction direction, int offset = 0);
StateVector apply_ansatz(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, const StateVector &state,
                         Direction direction, int offset = 0);
/// Same on an MPS; non-adjacent blocks are routed with swaps.
void apply_ansatz_mps(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, Mps &state, Direction direction,
                      int offset = 0);

DenseOperator ansatz_unitary(const AnsatzDescriptor &desc, const Eigen::VectorXd &params);

/// Max over wires of the number of gates whose span [min target, max target] covers the wire.
int crossing_metric(const AnsatzDescriptor &desc);

/// (I x U(theta)) |Phi> on 2n qubits; reference register is qubits 0..n-1.
StateVector vectorize_unitary(const AnsatzDescriptor &desc, const Eigen::VectorXd &params);
/// (I x U) |Phi> for a dense n-qubit unitary.
StateVector vectorize_unitary(const DenseOperator &unitary);
/// |Phi> as an MPS on 2n qubits.
Mps maximally_entangled_mps(int n);

/// Angles uniform in [0, 2 pi).
Eigen::VectorXd random_parameters(const AnsatzDescriptor &desc, Rng &rng);

}  // namespace aiso
