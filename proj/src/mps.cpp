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

#include "aiso/mps.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/SVD>

namespace aiso {

namespace {

struct Split {
    Eigen::MatrixXcd left;   // U
    Eigen::MatrixXcd right;  // S V^dagger
};

// Thin SVD of m = left * right keeping singular values above the cutoff.
Split svd_split(const Eigen::MatrixXcd &m, bool absorb_right) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd &s = svd.singularValues();
    Eigen::Index keep = 0;
    const double smax = s.size() > 0 ? s[0] : 0.0;
    while (keep < s.size() && s[keep] > kMpsCutoff * smax) ++keep;
    keep = std::max<Eigen::Index>(keep, 1);
    Split out;
    if (absorb_right) {
        out.left = svd.matrixU().leftCols(keep);
        out.right = s.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    } else {
        out.left = svd.matrixU().leftCols(keep) * s.head(keep).asDiagonal();
        out.right = svd.matrixV().leftCols(keep).adjoint();
    }
    return out;
}

const Eigen::Matrix4cd &swap_gate() {
    static const Eigen::Matrix4cd s = [] {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
        return m;
    }();
    return s;
}

template <typename Sites>
std::vector<int> chain_bonds(const Sites &sites) {
    std::vector<int> out;
    for (size_t k = 0; k + 1 < sites.size(); ++k) out.push_back(static_cast<int>(sites[k][0].cols()));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Mps

Mps Mps::product_state(const Bitstring &bits) {
    Mps out;
    for (int q = 0; q < bits.size(); ++q) {
        std::array<Eigen::MatrixXcd, 2> site{Eigen::MatrixXcd::Zero(1, 1), Eigen::MatrixXcd::Zero(1, 1)};
        site[bits.bit(q) ? 1 : 0](0, 0) = 1.0;
        out.sites_.push_back(std::move(site));
    }
    return out;
}

Mps Mps::from_statevector(const StateVector &psi) {
    const int n = psi.num_qubits();
    Mps out;
    out.sites_.resize(static_cast<size_t>(n));
    Eigen::MatrixXcd rest = psi.amplitudes().transpose();  // 1 x 2^n
    for (int k = 0; k < n; ++k) {
        const Eigen::Index dl = rest.rows();
        const Eigen::Index tail = rest.cols() / 2;  // 2^{n-k-1}
        Eigen::MatrixXcd m(dl * 2, tail);
        for (Eigen::Index l = 0; l < dl; ++l) {
            m.row(l * 2) = rest.row(l).head(tail);
            m.row(l * 2 + 1) = rest.row(l).tail(tail);
        }
        auto &site = out.sites_[static_cast<size_t>(k)];
        if (k == n - 1) {
            site[0] = Eigen::MatrixXcd(dl, 1);
            site[1] = Eigen::MatrixXcd(dl, 1);
            for (Eigen::Index l = 0; l < dl; ++l) {
                site[0](l, 0) = m(l * 2, 0);
                site[1](l, 0) = m(l * 2 + 1, 0);
            }
            break;
        }
        Split sp = svd_split(m, true);
        const Eigen::Index r = sp.left.cols();
        site[0] = Eigen::MatrixXcd(dl, r);
        site[1] = Eigen::MatrixXcd(dl, r);
        for (Eigen::Index l = 0; l < dl; ++l) {
            site[0].row(l) = sp.left.row(l * 2);
            site[1].row(l) = sp.left.row(l * 2 + 1);
        }
        rest = std::move(sp.right);
    }
    return out;
}

std::vector<int> Mps::bond_dims() const { return chain_bonds(sites_); }

int Mps::max_bond() const {
    const auto b = bond_dims();
    return b.empty() ? 1 : *std::max_element(b.begin(), b.end());
}

void Mps::apply_1q(int qubit, const Eigen::Matrix2cd &gate) {
    auto &s = sites_.at(static_cast<size_t>(qubit));
    const Eigen::MatrixXcd a0 = s[0];
    const Eigen::MatrixXcd a1 = s[1];
    s[0] = gate(0, 0) * a0 + gate(0, 1) * a1;
    s[1] = gate(1, 0) * a0 + gate(1, 1) * a1;
}

void Mps::apply_2q_adjacent(int q, const Eigen::Matrix4cd &gate) {
    if (q < 0 || q + 1 >= num_qubits()) throw std::out_of_range("Mps::apply_2q_adjacent: qubit out of range");
    auto &left = sites_[static_cast<size_t>(q)];
    auto &right = sites_[static_cast<size_t>(q + 1)];
    const Eigen::Index dl = left[0].rows();
    const Eigen::Index dr = right[0].cols();

    Eigen::MatrixXcd theta[4];
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) theta[2 * s + t] = left[static_cast<size_t>(s)] * right[static_cast<size_t>(t)];
    }
    // Rows l*2 + s', columns t'*dr + r.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dl * 2, 2 * dr);
    for (int out = 0; out < 4; ++out) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dl, dr);
        for (int in = 0; in < 4; ++in) {
            const cplx g = gate(out, in);
            if (g != cplx(0.0)) acc += g * theta[in];
        }
        const int sp = out >> 1;
        const int tp = out & 1;
        for (Eigen::Index l = 0; l < dl; ++l) m.block(l * 2 + sp, tp * dr, 1, dr) = acc.row(l);
    }
    Split split = svd_split(m, true);
    const Eigen::Index r = split.left.cols();
    for (int s = 0; s < 2; ++s) {
        left[static_cast<size_t>(s)] = Eigen::MatrixXcd(dl, r);
        for (Eigen::Index l = 0; l < dl; ++l) left[static_cast<size_t>(s)].row(l) = split.left.row(l * 2 + s);
        right[static_cast<size_t>(s)] = split.right.middleCols(s * dr, dr);
    }
}

void Mps::apply_2q(int q0, int q1, const Eigen::Matrix4cd &gate) {
    const int n = num_qubits();
    if (q0 < 0 || q1 < 0 || q0 >= n || q1 >= n || q0 == q1) {
        throw std::invalid_argument("Mps::apply_2q: invalid qubit pair");
    }
    if (q1 == q0 + 1) {
        apply_2q_adjacent(q0, gate);
        return;
    }
    if (q0 == q1 + 1) {
        apply_2q_adjacent(q1, swap_gate() * gate * swap_gate());
        return;
    }
    // Bring q1 next to q0, apply, and move it back.
    if (q1 > q0) {
        for (int k = q1 - 1; k > q0; --k) apply_2q_adjacent(k, swap_gate());
        apply_2q_adjacent(q0, gate);
        for (int k = q0 + 1; k < q1; ++k) apply_2q_adjacent(k, swap_gate());
    } else {
        for (int k = q1; k < q0 - 1; ++k) apply_2q_adjacent(k, swap_gate());
        apply_2q_adjacent(q0 - 1, swap_gate() * gate * swap_gate());
        for (int k = q0 - 2; k >= q1; --k) apply_2q_adjacent(k, swap_gate());
    }
}

cplx Mps::inner(const Mps &other) const {
    if (num_qubits() != other.num_qubits()) throw std::invalid_argument("Mps::inner: qubit count mismatch");
    Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
    for (size_t k = 0; k < sites_.size(); ++k) {
        env = sites_[k][0].adjoint() * env * other.sites_[k][0] + sites_[k][1].adjoint() * env * other.sites_[k][1];
    }
    return env(0, 0);
}

StateVector Mps::to_statevector() const {
    const int n = num_qubits();
    if (n > kMaxDenseQubits) throw std::invalid_argument("Mps::to_statevector: too many qubits");
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Ones(1, 1);
    for (const auto &site : sites_) {
        Eigen::MatrixXcd next(t.rows() * 2, site[0].cols());
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
            next.row(i * 2) = t.row(i) * site[0];
            next.row(i * 2 + 1) = t.row(i) * site[1];
        }
        t = std::move(next);
    }
    return StateVector::from_amplitudes(t.col(0), /*normalize=*/false);
}

// ---------------------------------------------------------------------------
// Mpo

Mpo Mpo::identity(int n) {
    std::vector<std::array<Eigen::MatrixXcd, 4>> sites;
    for (int k = 0; k < n; ++k) {
        std::array<Eigen::MatrixXcd, 4> s;
        for (int p = 0; p < 4; ++p) s[static_cast<size_t>(p)] = Eigen::MatrixXcd::Zero(1, 1);
        s[0](0, 0) = s[3](0, 0) = 1.0;
        sites.push_back(std::move(s));
    }
    return Mpo(std::move(sites));
}

std::vector<int> Mpo::bond_dims() const { return chain_bonds(sites_); }

int Mpo::max_bond() const {
    const auto b = bond_dims();
    return b.empty() ? 1 : *std::max_element(b.begin(), b.end());
}

cplx Mpo::expectation(const Mps &phi) const { return sandwich(phi, phi); }

cplx Mpo::sandwich(const Mps &bra, const Mps &ket) const {
    const int n = num_qubits();
    if (bra.num_qubits() != n || ket.num_qubits() != n) throw std::invalid_argument("Mpo::sandwich: qubit count mismatch");
    // env[d] is (bra bond) x (ket bond) for MPO bond index d.
    std::vector<Eigen::MatrixXcd> env{Eigen::MatrixXcd::Ones(1, 1)};
    for (int k = 0; k < n; ++k) {
        const auto &w = sites_[static_cast<size_t>(k)];
        const auto &b = bra.site(k);
        const auto &t = ket.site(k);
        const Eigen::Index d_in = w[0].rows();
        const Eigen::Index d_out = w[0].cols();
        const Eigen::Index cb = b[0].cols();
        const Eigen::Index ck = t[0].cols();
        std::vector<Eigen::MatrixXcd> next(static_cast<size_t>(d_out), Eigen::MatrixXcd::Zero(cb, ck));
        for (int a = 0; a < 2; ++a) {
            for (int c = 0; c < 2; ++c) {
                const Eigen::MatrixXcd &wm = w[static_cast<size_t>(2 * a + c)];
                for (Eigen::Index d = 0; d < d_in; ++d) {
                    bool any = false;
                    for (Eigen::Index e = 0; e < d_out && !any; ++e) any = wm(d, e) != cplx(0.0);
                    if (!any) continue;
                    const Eigen::MatrixXcd x = b[static_cast<size_t>(a)].adjoint() * env[static_cast<size_t>(d)] *
                                               t[static_cast<size_t>(c)];
                    for (Eigen::Index e = 0; e < d_out; ++e) {
                        const cplx coef = wm(d, e);
                        if (coef != cplx(0.0)) next[static_cast<size_t>(e)] += coef * x;
                    }
                }
            }
        }
        env = std::move(next);
    }
    return env[0](0, 0);
}

cplx Mpo::trace() const {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
    for (const auto &w : sites_) acc = acc * (w[0] + w[3]);
    return acc(0, 0);
}

DenseOperator Mpo::to_dense() const {
    const int n = num_qubits();
    if (n > kMaxDenseQubits) throw std::invalid_argument("Mpo::to_dense: too many qubits");
    // rows of t: (row index r, column index c) flattened as r * 2^k + c.
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Ones(1, 1);
    uint64_t dim = 1;
    for (const auto &w : sites_) {
        const uint64_t nd = dim * 2;
        Eigen::MatrixXcd next(static_cast<Eigen::Index>(nd * nd), w[0].cols());
        for (uint64_t r = 0; r < dim; ++r) {
            for (uint64_t c = 0; c < dim; ++c) {
                const auto row = t.row(static_cast<Eigen::Index>(r * dim + c));
                for (uint64_t a = 0; a < 2; ++a) {
                    for (uint64_t b = 0; b < 2; ++b) {
                        next.row(static_cast<Eigen::Index>((r * 2 + a) * nd + (c * 2 + b))) = row * w[2 * a + b];
                    }
                }
            }
        }
        t = std::move(next);
        dim = nd;
    }
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (uint64_t r = 0; r < dim; ++r) {
        for (uint64_t c = 0; c < dim; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t(static_cast<Eigen::Index>(r * dim + c), 0);
    }
    return DenseOperator(n, std::move(m));
}

void Mpo::compress() {
    const int n = num_qubits();
    if (n < 2) return;
    // Left to right: site k reshaped to (Dl * 4) x Dr, rows l * 4 + p.
    for (int k = 0; k + 1 < n; ++k) {
        auto &w = sites_[static_cast<size_t>(k)];
        auto &nx = sites_[static_cast<size_t>(k + 1)];
        const Eigen::Index dl = w[0].rows();
        const Eigen::Index dr = w[0].cols();
        Eigen::MatrixXcd m(dl * 4, dr);
        for (Eigen::Index l = 0; l < dl; ++l) {
            for (int p = 0; p < 4; ++p) m.row(l * 4 + p) = w[static_cast<size_t>(p)].row(l);
        }
        Split sp = svd_split(m, true);
        const Eigen::Index r = sp.left.cols();
        for (int p = 0; p < 4; ++p) {
            Eigen::MatrixXcd a(dl, r);
            for (Eigen::Index l = 0; l < dl; ++l) a.row(l) = sp.left.row(l * 4 + p);
            w[static_cast<size_t>(p)] = std::move(a);
            nx[static_cast<size_t>(p)] = sp.right * nx[static_cast<size_t>(p)];
        }
    }
    // Right to left: site k reshaped to Dl x (4 * Dr), columns p * Dr + r.
    for (int k = n - 1; k > 0; --k) {
        auto &w = sites_[static_cast<size_t>(k)];
        auto &pv = sites_[static_cast<size_t>(k - 1)];
        const Eigen::Index dl = w[0].rows();
        const Eigen::Index dr = w[0].cols();
        Eigen::MatrixXcd m(dl, 4 * dr);
        for (int p = 0; p < 4; ++p) m.middleCols(p * dr, dr) = w[static_cast<size_t>(p)];
        Split sp = svd_split(m, false);
        for (int p = 0; p < 4; ++p) {
            w[static_cast<size_t>(p)] = sp.right.middleCols(p * dr, dr);
            pv[static_cast<size_t>(p)] = pv[static_cast<size_t>(p)] * sp.left;
        }
    }
}

}  // namespace aiso
