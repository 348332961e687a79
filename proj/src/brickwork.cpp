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

#include "aiso/brickwork.hpp"

#include <stdexcept>
#include <string>

namespace aiso {

BrickworkLayout::BrickworkLayout(int n, int depth) : n_(n), d_(depth) {
    if (n < 2 || n > PauliString::kMaxQubits) throw std::invalid_argument("BrickworkLayout: need 2 <= n <= 32");
    if (depth < 1) throw std::invalid_argument("BrickworkLayout: depth must be >= 1");
    std::vector<bool> covered(static_cast<size_t>(n), false);
    for (int l = 0; l < depth; ++l) {
        offsets_.push_back(num_blocks_);
        std::vector<int> starts;
        for (int q = l % 2; q + 1 < n; q += 2) {
            starts.push_back(q);
            covered[static_cast<size_t>(q)] = covered[static_cast<size_t>(q + 1)] = true;
        }
        num_blocks_ += static_cast<int>(starts.size());
        layers_.push_back(std::move(starts));
    }
    for (int q = 0; q < n; ++q) {
        if (!covered[static_cast<size_t>(q)]) {
            throw std::invalid_argument("BrickworkLayout: qubit " + std::to_string(q) + " is not covered at n=" +
                                        std::to_string(n) + ", d=" + std::to_string(depth));
        }
    }
}

BrickworkCircuit::BrickworkCircuit(BrickworkLayout layout, std::vector<uint16_t> blocks)
    : layout_(std::move(layout)), blocks_(std::move(blocks)) {
    if (static_cast<int>(blocks_.size()) != layout_.num_blocks()) {
        throw std::invalid_argument("BrickworkCircuit: block count does not match layout");
    }
    for (uint16_t b : blocks_) {
        if (b >= kNumClifford2) throw std::invalid_argument("BrickworkCircuit: Clifford index out of range");
    }
}

BrickworkCircuit BrickworkCircuit::sample(const BrickworkLayout &layout, Rng &rng) {
    std::vector<uint16_t> blocks(static_cast<size_t>(layout.num_blocks()));
    for (uint16_t &b : blocks) b = static_cast<uint16_t>(sample_clifford2_index(rng));
    return BrickworkCircuit(layout, std::move(blocks));
}

BrickworkCircuit BrickworkCircuit::identity(const BrickworkLayout &layout) {
    return BrickworkCircuit(layout,
                            std::vector<uint16_t>(static_cast<size_t>(layout.num_blocks()), kIdentityClifford2));
}

void BrickworkCircuit::apply_inplace(Eigen::VectorXcd &amp) const {
    const auto &tables = clifford2_tables();
    const int n = layout_.num_qubits();
    size_t k = 0;
    for (int l = 0; l < layout_.depth(); ++l) {
        for (int q : layout_.layer(l)) apply_2q_inplace(amp, n, q, q + 1, tables[blocks_[k++]].unitary);
    }
}

void BrickworkCircuit::apply_adjoint_inplace(Eigen::VectorXcd &amp) const {
    const auto &tables = clifford2_tables();
    const int n = layout_.num_qubits();
    for (int l = layout_.depth() - 1; l >= 0; --l) {
        const auto &starts = layout_.layer(l);
        for (int i = static_cast<int>(starts.size()) - 1; i >= 0; --i) {
            const int q = starts[static_cast<size_t>(i)];
            const Eigen::Matrix4cd ud = tables[static_cast<size_t>(block(l, i))].unitary.adjoint();
            apply_2q_inplace(amp, n, q, q + 1, ud);
        }
    }
}

DenseOperator BrickworkCircuit::to_dense() const {
    const int n = layout_.num_qubits();
    if (n > kMaxDenseQubits) throw std::invalid_argument("BrickworkCircuit::to_dense: too many qubits");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
        col[c] = 1.0;
        apply_inplace(col);
        m.col(c) = col;
    }
    return DenseOperator(n, std::move(m));
}

namespace {

inline void conjugate_block(const Clifford2Entry &e, int n, int q, bool inverse, SignedPauli &p) {
    const int shift = n - 2 - q;
    const uint64_t mask = 3ULL << shift;
    const unsigned code = static_cast<unsigned>((((p.x >> shift) & 3) << 2) | ((p.z >> shift) & 3));
    const unsigned out = inverse ? e.inv_code[code] : e.fwd_code[code];
    p.sign *= inverse ? e.inv_sign[code] : e.fwd_sign[code];
    p.x = (p.x & ~mask) | (static_cast<uint64_t>(out >> 2) << shift);
    p.z = (p.z & ~mask) | (static_cast<uint64_t>(out & 3) << shift);
}

}  // namespace

void conjugate_by_adjoint(const BrickworkCircuit &circuit, SignedPauli &p) {
    const auto &tables = clifford2_tables();
    const BrickworkLayout &layout = circuit.layout();
    const int n = layout.num_qubits();
    for (int l = layout.depth() - 1; l >= 0; --l) {
        const auto &starts = layout.layer(l);
        for (size_t i = 0; i < starts.size(); ++i) {
            conjugate_block(tables[static_cast<size_t>(circuit.block(l, static_cast<int>(i)))], n, starts[i], true, p);
        }
    }
}

void conjugate_by_circuit(const BrickworkCircuit &circuit, SignedPauli &p) {
    const auto &tables = clifford2_tables();
    const BrickworkLayout &layout = circuit.layout();
    const int n = layout.num_qubits();
    for (int l = 0; l < layout.depth(); ++l) {
        const auto &starts = layout.layer(l);
        for (size_t i = 0; i < starts.size(); ++i) {
            conjugate_block(tables[static_cast<size_t>(circuit.block(l, static_cast<int>(i)))], n, starts[i], false, p);
        }
    }
}

std::vector<SignedPauli> stabilizer_generators(const BrickworkCircuit &circuit, const Bitstring &u) {
    const int n = circuit.layout().num_qubits();
    if (u.size() != n) throw std::invalid_argument("stabilizer_generators: outcome length mismatch");
    std::vector<SignedPauli> gens(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) {
        SignedPauli &g = gens[static_cast<size_t>(q)];
        g.z = 1ULL << (n - 1 - q);
        g.sign = u.bit(q) ? -1 : 1;
        conjugate_by_adjoint(circuit, g);
    }
    return gens;
}

std::vector<StabilizerTerm> stabilizer_decomposition(const BrickworkCircuit &circuit, const Bitstring &u) {
    const int n = circuit.layout().num_qubits();
    if (u.size() != n) throw std::invalid_argument("stabilizer_decomposition: outcome length mismatch");
    if (n > 20) throw std::invalid_argument("stabilizer_decomposition: 2^n terms too many to list");
    const std::vector<SignedPauli> gens = stabilizer_generators(circuit, u);
    std::vector<StabilizerTerm> out;
    out.reserve(size_t{1} << n);
    for_each_stabilizer(gens.data(), n, [&](uint64_t x, uint64_t z, int sign) {
        out.push_back(StabilizerTerm{PauliString(n, x, z), sign});
    });
    return out;
}

}  // namespace aiso
