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

#include "aiso/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace aiso {

PatternWeightTable::PatternWeightTable(BrickworkLayout layout, std::vector<double> weights)
    : layout_(std::move(layout)), w_(std::move(weights)) {
    if (w_.size() != (size_t{1} << layout_.num_qubits())) {
        throw std::invalid_argument("PatternWeightTable: expected 2^n weights");
    }
    inv_.resize(w_.size());
    for (size_t i = 0; i < w_.size(); ++i) inv_[i] = w_[i] > 0.0 ? 1.0 / w_[i] : 0.0;
}

double PatternWeightTable::min_weight() const { return *std::min_element(w_.begin(), w_.end()); }

PatternWeightTable pattern_weights(const BrickworkLayout &layout) {
    const int n = layout.num_qubits();
    if (n > kMaxWeightTableQubits) throw std::invalid_argument("pattern_weights: too many qubits for a dense table");
    const uint64_t size = 1ULL << n;
    std::vector<double> v(size);
    for (uint64_t f = 0; f < size; ++f) v[f] = std::pow(1.0 / 3.0, std::popcount(f));

    for (int l = layout.depth() - 1; l >= 0; --l) {
        for (int q : layout.layer(l)) {
            const int shift = n - 2 - q;
            const uint64_t mask = 3ULL << shift;
            for (uint64_t base = 0; base < size; ++base) {
                if (base & mask) continue;
                const double v1 = v[base | (1ULL << shift)];
                const double v2 = v[base | (2ULL << shift)];
                const double v3 = v[base | mask];
                const double moved = (v1 + v2) / 5.0 + 3.0 * v3 / 5.0;
                v[base | (1ULL << shift)] = moved;
                v[base | (2ULL << shift)] = moved;
                v[base | mask] = moved;
            }
        }
    }
    return PatternWeightTable(layout, std::move(v));
}

std::pair<double, double> monte_carlo_weight(const BrickworkLayout &layout, uint64_t pattern, int64_t samples,
                                             Rng &rng) {
    if (samples < 1) throw std::invalid_argument("monte_carlo_weight: samples must be >= 1");
    const int n = layout.num_qubits();
    if ((pattern >> n) != 0) throw std::invalid_argument("monte_carlo_weight: pattern has bits beyond n");
    if (pattern == 0) return {1.0, 0.0};
    int64_t hits = 0;
    for (int64_t i = 0; i < samples; ++i) {
        const BrickworkCircuit c = BrickworkCircuit::sample(layout, rng);
        SignedPauli p{0, pattern, 1};
        conjugate_by_circuit(c, p);
        if (p.x == 0) ++hits;
    }
    const double est = static_cast<double>(hits) / static_cast<double>(samples);
    return {est, std::sqrt(est * (1.0 - est) / static_cast<double>(samples))};
}

namespace {

DenseOperator scale_pauli_coefficients(const PatternWeightTable &table, const DenseOperator &op, bool inverse) {
    const int n = table.num_qubits();
    if (op.num_qubits() != n) throw std::invalid_argument("channel: operator size does not match layout");
    if (inverse && table.min_weight() <= 0.0) {
        throw std::domain_error("apply_inverse_channel: non-positive pattern weight (uncovered qubit?)");
    }
    Eigen::VectorXcd c = pauli_decompose(op.matrix(), n);
    const uint64_t dim = 1ULL << n;
    for (uint64_t x = 0; x < dim; ++x) {
        for (uint64_t z = 0; z < dim; ++z) {
            const uint64_t pattern = x | z;
            c[static_cast<Eigen::Index>((x << n) | z)] *=
                inverse ? table.inverse_weight(pattern) : table.weight(pattern);
        }
    }
    return DenseOperator(n, pauli_compose(c, n));
}

}  // namespace

DenseOperator apply_channel(const PatternWeightTable &table, const DenseOperator &op) {
    return scale_pauli_coefficients(table, op, false);
}

DenseOperator apply_inverse_channel(const PatternWeightTable &table, const DenseOperator &op) {
    return scale_pauli_coefficients(table, op, true);
}

// ---------------------------------------------------------------------------
// ChannelMpo

std::vector<int> ChannelMpo::bond_dims() const {
    std::vector<int> out;
    for (size_t k = 0; k + 1 < cores_.size(); ++k) out.push_back(static_cast<int>(cores_[k][0].cols()));
    return out;
}

int ChannelMpo::max_bond() const {
    const auto b = bond_dims();
    return b.empty() ? 1 : *std::max_element(b.begin(), b.end());
}

double ChannelMpo::value(uint64_t pattern) const {
    const int n = num_qubits();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Ones(1, 1);
    for (int k = 0; k < n; ++k) acc = acc * cores_[static_cast<size_t>(k)][(pattern >> (n - 1 - k)) & 1];
    return acc(0, 0);
}

DenseOperator ChannelMpo::apply(const DenseOperator &op) const {
    const int n = num_qubits();
    if (op.num_qubits() != n) throw std::invalid_argument("ChannelMpo::apply: operator size mismatch");
    const Eigen::Index dim = op.dim();
    std::vector<Eigen::MatrixXcd> carry{op.matrix()};
    for (int k = 0; k < n; ++k) {
        const auto &core = cores_[static_cast<size_t>(k)];
        const Eigen::Index bit = Eigen::Index{1} << (n - 1 - k);
        std::vector<Eigen::MatrixXcd> next(static_cast<size_t>(core[0].cols()), Eigen::MatrixXcd::Zero(dim, dim));
        for (size_t l = 0; l < carry.size(); ++l) {
            const Eigen::MatrixXcd &b = carry[l];
            // Pi_0 on site k: average of the two diagonal blocks, times I.
            Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r) {
                if (r & bit) continue;
                for (Eigen::Index c = 0; c < dim; ++c) {
                    if (c & bit) continue;
                    const cplx avg = 0.5 * (b(r, c) + b(r | bit, c | bit));
                    p0(r, c) = avg;
                    p0(r | bit, c | bit) = avg;
                }
            }
            const Eigen::MatrixXcd p1 = b - p0;
            for (Eigen::Index r = 0; r < core[0].cols(); ++r) {
                const double g0 = core[0](static_cast<Eigen::Index>(l), r);
                const double g1 = core[1](static_cast<Eigen::Index>(l), r);
                if (g0 != 0.0) next[static_cast<size_t>(r)] += g0 * p0;
                if (g1 != 0.0) next[static_cast<size_t>(r)] += g1 * p1;
            }
        }
        carry = std::move(next);
    }
    return DenseOperator(n, std::move(carry[0]));
}

ChannelMpo channel_mpo(const PatternWeightTable &table) {
    const int n = table.num_qubits();
    if (table.min_weight() <= 0.0) throw std::domain_error("channel_mpo: non-positive pattern weight");
    const std::vector<double> &inv = table.inverse_weights();
    std::vector<std::array<Eigen::MatrixXd, 2>> cores(static_cast<size_t>(n));
    Eigen::MatrixXd rest = Eigen::Map<const Eigen::RowVectorXd>(inv.data(), static_cast<Eigen::Index>(inv.size()));
    for (int k = 0; k < n; ++k) {
        const Eigen::Index dl = rest.rows();
        const Eigen::Index tail = rest.cols() / 2;
        Eigen::MatrixXd m(dl * 2, tail);
        for (Eigen::Index l = 0; l < dl; ++l) {
            m.row(l * 2) = rest.row(l).head(tail);
            m.row(l * 2 + 1) = rest.row(l).tail(tail);
        }
        auto &core = cores[static_cast<size_t>(k)];
        if (k == n - 1) {
            core[0] = m.col(0)(Eigen::seq(0, Eigen::last, 2));
            core[1] = m.col(0)(Eigen::seq(1, Eigen::last, 2));
            break;
        }
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd &s = svd.singularValues();
        Eigen::Index keep = 0;
        while (keep < s.size() && s[keep] > kMpsCutoff * s[0]) ++keep;
        keep = std::max<Eigen::Index>(keep, 1);
        const Eigen::MatrixXd u = svd.matrixU().leftCols(keep);
        core[0] = u(Eigen::seq(0, Eigen::last, 2), Eigen::all);
        core[1] = u(Eigen::seq(1, Eigen::last, 2), Eigen::all);
        rest = s.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).transpose();
    }
    return ChannelMpo(std::move(cores));
}

}  // namespace aiso
