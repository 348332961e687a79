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

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace aiso;

namespace {

// Random MPO with the given bond dimension (not Hermitian in general).
Mpo random_mpo(int n, int bond, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::array<Eigen::MatrixXcd, 4>> sites;
    for (int k = 0; k < n; ++k) {
        const int dl = k == 0 ? 1 : bond;
        const int dr = k == n - 1 ? 1 : bond;
        std::array<Eigen::MatrixXcd, 4> s;
        for (auto &m : s) {
            m = Eigen::MatrixXcd(dl, dr);
            for (int r = 0; r < dl; ++r) {
                for (int c = 0; c < dr; ++c) m(r, c) = cplx(g(rng), g(rng));
            }
        }
        sites.push_back(std::move(s));
    }
    return Mpo(std::move(sites));
}

}  // namespace

TEST(mps, product_state) {
    const Mps m = Mps::product_state(Bitstring::parse("0110"));
    EXPECT_EQ(m.max_bond(), 1);
    const StateVector psi = m.to_statevector();
    EXPECT_NEAR(std::abs(psi[0b0110]), 1.0, 1e-15);
}

TEST(mps, from_statevector_round_trip) {
    Rng rng(1);
    for (int n = 1; n <= 6; ++n) {
        const StateVector psi = haar_random_state(n, rng);
        const Mps m = Mps::from_statevector(psi);
        EXPECT_LT((m.to_statevector().amplitudes() - psi.amplitudes()).norm(), 1e-12);
        EXPECT_NEAR(std::abs(m.inner(m)), 1.0, 1e-12);
    }
    // Generic 6-qubit state saturates 2^min(k, n-k).
    const Mps m6 = Mps::from_statevector(haar_random_state(6, rng));
    EXPECT_EQ(m6.bond_dims(), (std::vector<int>{2, 4, 8, 4, 2}));
}

TEST(mps, gates_match_dense) {
    Rng rng(2);
    const int n = 5;
    StateVector psi = haar_random_state(n, rng);
    Mps m = Mps::from_statevector(psi);
    Eigen::VectorXcd amp = psi.amplitudes();
    for (int step = 0; step < 30; ++step) {
        const int q0 = static_cast<int>(uniform_index(rng, n));
        int q1 = static_cast<int>(uniform_index(rng, n - 1));
        if (q1 >= q0) ++q1;
        const Eigen::Matrix4cd g = haar_random_unitary(2, rng).matrix();
        m.apply_2q(q0, q1, g);
        apply_2q_inplace(amp, n, q0, q1, g);
        const Eigen::Matrix2cd h = haar_random_unitary(1, rng).matrix();
        m.apply_1q(q1, h);
        apply_1q_inplace(amp, n, q1, h);
    }
    EXPECT_LT((m.to_statevector().amplitudes() - amp).norm(), 1e-10);
}

TEST(mps, inner_product) {
    Rng rng(3);
    const StateVector a = haar_random_state(4, rng);
    const StateVector b = haar_random_state(4, rng);
    EXPECT_LT(std::abs(Mps::from_statevector(a).inner(Mps::from_statevector(b)) - a.inner(b)), 1e-12);
}

TEST(mpo, identity_and_trace) {
    const Mpo id = Mpo::identity(3);
    EXPECT_LT(testutil::max_abs_diff(id.to_dense().matrix(), Eigen::MatrixXcd::Identity(8, 8)), 1e-15);
    EXPECT_NEAR(id.trace().real(), 8.0, 1e-15);
}

TEST(mpo, sandwich_and_compress_match_dense) {
    Rng rng(4);
    const int n = 5;
    Mpo w = random_mpo(n, 3, rng);
    const Eigen::MatrixXcd dense = w.to_dense().matrix();
    const StateVector a = haar_random_state(n, rng);
    const StateVector b = haar_random_state(n, rng);
    const cplx expect = a.amplitudes().dot(dense * b.amplitudes());
    EXPECT_LT(std::abs(w.sandwich(Mps::from_statevector(a), Mps::from_statevector(b)) - expect), 1e-10);
    EXPECT_LT(std::abs(w.trace() - dense.trace()), 1e-10);
    w.compress();
    EXPECT_LT(testutil::max_abs_diff(w.to_dense().matrix(), dense), 1e-10);
    EXPECT_LE(w.max_bond(), 3);
}

TEST(mpo, compress_removes_redundant_bond) {
    // Sum of two copies of the same product operator has rank one.
    Rng rng(5);
    Mpo w = random_mpo(4, 1, rng);
    std::vector<std::array<Eigen::MatrixXcd, 4>> doubled;
    for (int k = 0; k < 4; ++k) {
        std::array<Eigen::MatrixXcd, 4> s;
        for (int p = 0; p < 4; ++p) {
            const cplx v = w.site(k)[static_cast<size_t>(p)](0, 0);
            if (k == 0) {
                s[static_cast<size_t>(p)] = Eigen::MatrixXcd::Constant(1, 2, v);
            } else if (k == 3) {
                s[static_cast<size_t>(p)] = Eigen::MatrixXcd::Constant(2, 1, v);
            } else {
                s[static_cast<size_t>(p)] = Eigen::MatrixXcd::Identity(2, 2) * v;
            }
        }
        doubled.push_back(std::move(s));
    }
    Mpo d(std::move(doubled));
    const Eigen::MatrixXcd before = d.to_dense().matrix();
    d.compress();
    EXPECT_EQ(d.max_bond(), 1);
    EXPECT_LT(testutil::max_abs_diff(d.to_dense().matrix(), before), 1e-10);
}
