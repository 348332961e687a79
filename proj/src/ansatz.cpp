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


#include "aiso/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aiso {

namespace {

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

class Builder {
  public:
    explicit Builder(AnsatzDescriptor &d) : d_(d) {}

    void block(int a, int b) {
        const int arity = block_arity(d_.block);
        d_.gates.push_back(GateSpec{GateKind::Block, {a, b}, 2, d_.num_params, arity});
        d_.num_params += arity;
    }
    void single(GateKind kind, int q) {
        d_.gates.push_back(GateSpec{kind, {q, q}, 1, d_.num_params, 1});
        d_.num_params += 1;
    }
    void cnot(int c, int t) { d_.gates.push_back(GateSpec{GateKind::Cnot, {c, t}, 2, d_.num_params, 0}); }

  private:
    AnsatzDescriptor &d_;
};

// Adds the tree over wires [lo, lo + size) and returns the wire carrying its output.
int ttn_subtree(Builder &b, int lo, int size, bool is_left_child, std::vector<std::vector<std::pair<int, int>>> &levels,
                int level) {
    if (size == 1) return lo;
    const int half = size / 2;
    const int left = ttn_subtree(b, lo, half, true, levels, level + 1);
    const int right = ttn_subtree(b, lo + half, half, false, levels, level + 1);
    levels[static_cast<size_t>(level)].emplace_back(left, right);
    return is_left_child ? right : left;
}

Eigen::Matrix4d kron2(const Eigen::Matrix2d &a, const Eigen::Matrix2d &b) {
    Eigen::Matrix4d k;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) k.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
    }
    return k;
}

Eigen::Matrix4d cnot4() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
    return m;
}

Eigen::Matrix4d block_matrix(const AnsatzDescriptor &desc, const GateSpec &g, const Eigen::VectorXd &p) {
    const int k = g.first_param;
    Eigen::Matrix4d m = block4_matrix(p[k], p[k + 1], p[k + 2], p[k + 3]);
    if (desc.block == BlockTemplate::Block8) m = block4_matrix(p[k + 4], p[k + 5], p[k + 6], p[k + 7]) * m;
    return m;
}

void check_params(const AnsatzDescriptor &desc, const Eigen::VectorXd &params) {
    if (params.size() != desc.num_params) {
        throw std::invalid_argument("ansatz: expected " + std::to_string(desc.num_params) + " parameters, got " +
                                    std::to_string(params.size()));
    }
}

// Visits gates in application order with the matrix for the chosen direction.
template <typename OnTwo, typename OnOne, typename OnCnot>
void walk(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, Direction dir, OnTwo &&two, OnOne &&one,
          OnCnot &&cx) {
    check_params(desc, params);
    const bool adj = dir == Direction::Adjoint;
    const size_t count = desc.gates.size();
    for (size_t s = 0; s < count; ++s) {
        const GateSpec &g = desc.gates[adj ? count - 1 - s : s];
        switch (g.kind) {
            case GateKind::Block: {
                const Eigen::Matrix4d m = block_matrix(desc, g, params);
                two(g.targets[0], g.targets[1], adj ? Eigen::Matrix4d(m.transpose()) : m);
                break;
            }
            case GateKind::Ry: {
                const Eigen::Matrix2d m = ry_matrix(params[g.first_param]);
                one(g.targets[0], adj ? Eigen::Matrix2cd(m.transpose().cast<cplx>()) : Eigen::Matrix2cd(m.cast<cplx>()));
                break;
            }
            case GateKind::Rz: {
                const double t = params[g.first_param];
                one(g.targets[0], rz_matrix(adj ? -t : t));
                break;
            }
            case GateKind::Cnot:
                cx(g.targets[0], g.targets[1]);
                break;
        }
    }
}

}  // namespace

std::string to_string(AnsatzFamily family) {
    switch (family) {
        case AnsatzFamily::ALA: return "ala";
        case AnsatzFamily::MERA: return "mera";
        case AnsatzFamily::HEA: return "hea";
        case AnsatzFamily::TTN: return "ttn";
    }
    return "?";
}

AnsatzFamily parse_ansatz_family(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "ala") return AnsatzFamily::ALA;
    if (s == "mera") return AnsatzFamily::MERA;
    if (s == "hea") return AnsatzFamily::HEA;
    if (s == "ttn") return AnsatzFamily::TTN;
    throw std::invalid_argument("unknown ansatz family '" + std::string(name) + "'");
}

int block_arity(BlockTemplate block) { return block == BlockTemplate::Block4 ? 4 : 8; }

AnsatzDescriptor build_ansatz(AnsatzFamily family, int n, int layers, BlockTemplate block) {
    if (n < 2) throw std::invalid_argument("build_ansatz: need n >= 2");
    if (layers < 1) throw std::invalid_argument("build_ansatz: need layers >= 1");
    if ((family == AnsatzFamily::MERA || family == AnsatzFamily::TTN) && !is_power_of_two(n)) {
        throw std::invalid_argument("build_ansatz: " + to_string(family) + " needs n a power of 2");
    }
    AnsatzDescriptor d;
    d.family = family;
    d.block = block;
    d.n = n;
    d.layers = layers;
    Builder b(d);
    switch (family) {
        case AnsatzFamily::ALA:
            for (int l = 0; l < layers; ++l) {
                for (int q = l % 2; q + 1 < n; q += 2) b.block(q, q + 1);
            }
            break;
        case AnsatzFamily::HEA:
            for (int l = 0; l < layers; ++l) {
                for (int q = 0; q < n; ++q) {
                    b.single(GateKind::Rz, q);
                    b.single(GateKind::Ry, q);
                }
                for (int q = 0; q + 1 < n; ++q) b.cnot(q, q + 1);
            }
            break;
        case AnsatzFamily::TTN: {
            const int depth = std::countr_zero(static_cast<unsigned>(n));
            for (int l = 0; l < layers; ++l) {
                std::vector<std::vector<std::pair<int, int>>> levels(static_cast<size_t>(depth));
                ttn_subtree(b, 0, n, true, levels, 0);
                // Leaves first.
                for (int lv = depth - 1; lv >= 0; --lv) {
                    for (auto [x, y] : levels[static_cast<size_t>(lv)]) b.block(x, y);
                }
            }
            break;
        }
        case AnsatzFamily::MERA:
            for (int l = 0; l < layers; ++l) {
                std::vector<int> w(static_cast<size_t>(n));
                for (int q = 0; q < n; ++q) w[static_cast<size_t>(q)] = q;
                while (w.size() > 2) {
                    for (size_t i = 1; i + 1 < w.size(); i += 2) b.block(w[i], w[i + 1]);
                    std::vector<int> kept;
                    const size_t pairs = w.size() / 2;
                    for (size_t i = 0; i < pairs; ++i) {
                        b.block(w[2 * i], w[2 * i + 1]);
                        // Keep the inner wire of each pair so the next scale stays centred.
                        kept.push_back(i < pairs / 2 ? w[2 * i + 1] : w[2 * i]);
                    }
                    w = std::move(kept);
                }
                b.block(w[0], w[1]);
            }
            break;
    }
    return d;
}

Eigen::Matrix2d ry_matrix(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Eigen::Matrix2d m;
    m << c, -s, s, c;
    return m;
}

Eigen::Matrix2cd rz_matrix(double theta) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::polar(1.0, -theta / 2);
    m(1, 1) = std::polar(1.0, theta / 2);
    return m;
}

Eigen::Matrix4d block4_matrix(double t0, double t1, double t2, double t3) {
    return kron2(ry_matrix(t2), ry_matrix(t3)) * cnot4() * kron2(ry_matrix(t0), ry_matrix(t1));
}

void apply_ansatz_inplace(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, Eigen::VectorXcd &amp,
                          int total_qubits, Direction direction, int offset) {
    if (offset < 0 || offset + desc.n > total_qubits) throw std::invalid_argument("apply_ansatz: register out of range");
    if (amp.size() != (Eigen::Index{1} << total_qubits)) throw std::invalid_argument("apply_ansatz: amplitude size mismatch");
    walk(
        desc, params, direction,
        [&](int a, int b, const Eigen::Matrix4d &m) { apply_2q_inplace(amp, total_qubits, offset + a, offset + b, m); },
        [&](int q, const Eigen::Matrix2cd &m) { apply_1q_inplace(amp, total_qubits, offset + q, m); },
        [&](int c, int t) { apply_cnot_inplace(amp, total_qubits, offset + c, offset + t); });
}

StateVector apply_ansatz(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, const StateVector &state,
                         Direction direction, int offset) {
    Eigen::VectorXcd amp = state.amplitudes();
    apply_ansatz_inplace(desc, params, amp, state.num_qubits(), direction, offset);
    return StateVector::from_amplitudes(std::move(amp));
}

void apply_ansatz_mps(const AnsatzDescriptor &desc, const Eigen::VectorXd &params, Mps &state, Direction direction,
                      int offset) {
    if (offset < 0 || offset + desc.n > state.num_qubits()) throw std::invalid_argument("apply_ansatz_mps: register out of range");
    const Eigen::Matrix4cd cx = cnot4().cast<cplx>();
    walk(
        desc, params, direction,
        [&](int a, int b, const Eigen::Matrix4d &m) { state.apply_2q(offset + a, offset + b, m.cast<cplx>()); },
        [&](int q, const Eigen::Matrix2cd &m) { state.apply_1q(offset + q, m); },
        [&](int c, int t) { state.apply_2q(offset + c, offset + t, cx); });
}

DenseOperator ansatz_unitary(const AnsatzDescriptor &desc, const Eigen::VectorXd &params) {
    if (desc.n > kMaxDenseQubits) throw std::invalid_argument("ansatz_unitary: too many qubits");
    const Eigen::Index dim = Eigen::Index{1} << desc.n;
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        Eigen::VectorXcd col = Eigen::VectorXcd::Zero(dim);
        col[c] = 1.0;
        apply_ansatz_inplace(desc, params, col, desc.n, Direction::Forward);
        u.col(c) = col;
    }
    return DenseOperator(desc.n, std::move(u));
}

int crossing_metric(const AnsatzDescriptor &desc) {
    if (desc.n <= 0) return 0;
    std::vector<int> hits(static_cast<size_t>(desc.n), 0);
    for (const GateSpec &g : desc.gates) {
        int lo = g.targets[0];
        int hi = g.targets[0];
        for (int i = 1; i < g.num_targets; ++i) {
            lo = std::min(lo, g.targets[static_cast<size_t>(i)]);
            hi = std::max(hi, g.targets[static_cast<size_t>(i)]);
        }
        for (int q = lo; q <= hi; ++q) ++hits[static_cast<size_t>(q)];
    }
    return *std::max_element(hits.begin(), hits.end());
}

StateVector vectorize_unitary(const AnsatzDescriptor &desc, const Eigen::VectorXd &params) {
    const int n = desc.n;
    if (2 * n > kMaxDenseQubits) throw std::invalid_argument("vectorize_unitary: too many qubits");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(dim * dim);
    const double a = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) amp[(i << n) | i] = a;
    apply_ansatz_inplace(desc, params, amp, 2 * n, Direction::Forward, n);
    return StateVector::from_amplitudes(std::move(amp));
}

StateVector vectorize_unitary(const DenseOperator &unitary) {
    const int n = unitary.num_qubits();
    if (2 * n > kMaxDenseQubits) throw std::invalid_argument("vectorize_unitary: too many qubits");
    const Eigen::Index dim = Eigen::Index{1} << n;
    // Amplitude of |i>|j> is U(j, i) / sqrt(dim).
    Eigen::VectorXcd amp(dim * dim);
    const double a = 1.0 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) amp[(i << n) | j] = unitary(j, i) * a;
    }
    return StateVector::from_amplitudes(std::move(amp));
}

Mps maximally_entangled_mps(int n) {
    Mps m = Mps::product_state(Bitstring(2 * n, 0));
    Eigen::Matrix2cd h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    const Eigen::Matrix4cd cx = cnot4().cast<cplx>();
    for (int i = 0; i < n; ++i) {
        m.apply_1q(i, h);
        m.apply_2q(i, n + i, cx);
    }
    return m;
}

Eigen::VectorXd random_parameters(const AnsatzDescriptor &desc, Rng &rng) {
    Eigen::VectorXd p(desc.num_params);
    for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = 2.0 * std::numbers::pi * uniform01(rng);
    return p;
}

}  // namespace aiso
