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

#include "aiso/linalg.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace aiso;

namespace {

Eigen::MatrixXcd pauli_matrix(const char *s) { return pauli_to_dense(PauliString::parse(s)).matrix(); }

}  // namespace

TEST(apply_gate, x_flips_zero) {
    const int t[] = {0};
    const StateVector out = apply_gate(StateVector::zero(1), pauli_matrix("X"), t);
    EXPECT_NEAR(std::abs(out[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(out[0]), 0.0, 1e-15);
}

TEST(apply_gate, identity_is_noop) {
    Rng rng(1);
    const StateVector psi = haar_random_state(3, rng);
    const int t[] = {2, 0};
    const StateVector out = apply_gate(psi, Eigen::MatrixXcd::Identity(4, 4), t);
    EXPECT_LT((out.amplitudes() - psi.amplitudes()).norm(), 1e-14);
}

TEST(apply_gate, z_on_plus) {
    Eigen::VectorXcd plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const int t[] = {0};
    const StateVector out = apply_gate(StateVector::from_amplitudes(plus), pauli_matrix("Z"), t);
    EXPECT_NEAR(out[0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(out[1].real(), -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(apply_gate, targets_follow_msb_convention) {
    // X on qubit 0 of |00> gives |10>, index 2.
    const int t[] = {0};
    const StateVector out = apply_gate(StateVector::zero(2), pauli_matrix("X"), t);
    EXPECT_NEAR(std::abs(out[2]), 1.0, 1e-15);
    // Gate on (1, 0) equals the swapped embedding of the same gate on (0, 1).
    Rng rng(2);
    const StateVector psi = haar_random_state(2, rng);
    const Eigen::MatrixXcd g = haar_random_unitary(2, rng).matrix();
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    const int rev[] = {1, 0};
    const StateVector a = apply_gate(psi, g, rev);
    const Eigen::VectorXcd b = swap * g * swap * psi.amplitudes();
    EXPECT_LT((a.amplitudes() - b).norm(), 1e-12);
}

TEST(apply_gate, errors) {
    const int dup[] = {0, 0};
    EXPECT_THROW(apply_gate(StateVector::zero(2), Eigen::MatrixXcd::Identity(4, 4), dup), std::invalid_argument);
    const int one[] = {0};
    EXPECT_THROW(apply_gate(StateVector::zero(2), Eigen::MatrixXcd::Identity(4, 4), one), std::invalid_argument);
}

TEST(apply_gate, preserves_norm_and_matches_kernels) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4;
        const StateVector psi = haar_random_state(n, rng);
        const int q0 = static_cast<int>(uniform_index(rng, n));
        int q1 = static_cast<int>(uniform_index(rng, n - 1));
        if (q1 >= q0) ++q1;
        const Eigen::Matrix4cd g = haar_random_unitary(2, rng).matrix();
        const int t[] = {q0, q1};
        const StateVector out = apply_gate(psi, g, t);
        EXPECT_NEAR(out.norm(), 1.0, 1e-10);
        Eigen::VectorXcd amp = psi.amplitudes();
        apply_2q_inplace(amp, n, q0, q1, g);
        EXPECT_LT((amp - out.amplitudes()).norm(), 1e-12);

        const Eigen::Matrix2cd h = haar_random_unitary(1, rng).matrix();
        const int s[] = {q0};
        Eigen::VectorXcd amp1 = psi.amplitudes();
        apply_1q_inplace(amp1, n, q0, h);
        EXPECT_LT((amp1 - apply_gate(psi, h, s).amplitudes()).norm(), 1e-12);
    }
}

TEST(apply_gate, cnot_kernel) {
    Rng rng(4);
    const StateVector psi = haar_random_state(3, rng);
    Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const int t[] = {2, 0};
    Eigen::VectorXcd amp = psi.amplitudes();
    apply_cnot_inplace(amp, 3, 2, 0);
    EXPECT_LT((amp - apply_gate(psi, cnot, t).amplitudes()).norm(), 1e-14);
}

TEST(measure_standard_basis, basis_states_are_deterministic) {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        auto [u, post] = measure_standard_basis(StateVector::basis(Bitstring::parse("01")), rng);
        EXPECT_EQ(u.to_string(), "01");
        EXPECT_NEAR(std::abs(post[1]), 1.0, 1e-15);
    }
    auto [u8, post8] = measure_standard_basis(StateVector::zero(8), rng);
    EXPECT_EQ(u8.to_string(), "00000000");
}

TEST(measure_standard_basis, bell_frequencies) {
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    const StateVector psi = StateVector::from_amplitudes(bell);
    Rng rng(6);
    const int shots = 100000;
    int zeros = 0;
    for (int i = 0; i < shots; ++i) {
        auto [u, post] = measure_standard_basis(psi, rng);
        ASSERT_TRUE(u.value() == 0 || u.value() == 3);
        zeros += u.value() == 0;
    }
    const double sigma = std::sqrt(0.25 / shots);
    EXPECT_NEAR(static_cast<double>(zeros) / shots, 0.5, 3 * sigma);
}

TEST(measure_standard_basis, born_rule_chi_square) {
    Rng rng(7);
    const StateVector psi = haar_random_state(3, rng);
    const int shots = 100000;
    std::vector<int> counts(8, 0);
    for (int i = 0; i < shots; ++i) ++counts[sample_basis_index(psi.amplitudes(), rng)];
    double chi2 = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double expected = psi.probability(static_cast<uint64_t>(k)) * shots;
        chi2 += (counts[static_cast<size_t>(k)] - expected) * (counts[static_cast<size_t>(k)] - expected) / expected;
    }
    // 7 degrees of freedom, p = 0.001.
    EXPECT_LT(chi2, 24.32);
}

TEST(expectation, basic_values) {
    const DenseOperator z = pauli_to_dense(PauliString::parse("Z"));
    const DenseOperator x = pauli_to_dense(PauliString::parse("X"));
    EXPECT_NEAR(expectation(StateVector::zero(1), z), 1.0, 1e-15);
    EXPECT_NEAR(expectation(StateVector::zero(1), x), 0.0, 1e-15);
    const DenseOperator mixed = DenseOperator::identity(1) * cplx(0.5);
    EXPECT_NEAR(expectation(mixed, DenseOperator::projector(StateVector::zero(1))), 0.5, 1e-15);
}

TEST(expectation, rejects_non_hermitian) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(expectation(StateVector::zero(1), DenseOperator(1, m)), std::invalid_argument);
}

TEST(expectation, bilinear) {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseOperator r1 = testutil::random_density(3, rng);
        const DenseOperator r2 = testutil::random_density(3, rng);
        const DenseOperator o1 = testutil::random_hermitian(3, rng);
        const DenseOperator o2 = testutil::random_hermitian(3, rng);
        const double a = 0.3;
        const double b = -1.7;
        EXPECT_NEAR(expectation(r1, o1 * cplx(a) + o2 * cplx(b)), a * expectation(r1, o1) + b * expectation(r1, o2), 1e-10);
        const DenseOperator mix = r1 * cplx(0.25) + r2 * cplx(0.75);
        EXPECT_NEAR(expectation(mix, o1), 0.25 * expectation(r1, o1) + 0.75 * expectation(r2, o1), 1e-10);
    }
}

TEST(haar_random_state, moments) {
    Rng rng(9);
    const int samples = 10000;
    double m1 = 0.0;
    double m1sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StateVector psi = haar_random_state(2, rng);
        ASSERT_NEAR(psi.norm(), 1.0, 1e-12);
        const double p = psi.probability(0);
        m1 += p;
        m1sq += p * p;
    }
    m1 /= samples;
    const double sd = std::sqrt((m1sq / samples - m1 * m1) / samples);
    EXPECT_NEAR(m1, 0.25, 3 * sd);

    double m2 = 0.0;
    double m2sq = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double p = haar_random_state(1, rng).probability(0);
        m2 += p * p;
        m2sq += p * p * p * p;
    }
    m2 /= samples;
    const double sd2 = std::sqrt((m2sq / samples - m2 * m2) / samples);
    // E|<0|psi>|^4 = 2 / (d (d + 1)) with d = 2.
    EXPECT_NEAR(m2, 1.0 / 3.0, 3 * sd2);
}

TEST(haar_random_state, unitary_invariance) {
    // <0|V psi> statistics for a fixed V match those of <0|psi>.
    Rng rng(10);
    const Eigen::MatrixXcd v = haar_random_unitary(2, rng).matrix();
    const int samples = 20000;
    double a = 0.0;
    double b = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const StateVector psi = haar_random_state(2, rng);
        const double pa = psi.probability(3);
        const double pb = std::norm((v * psi.amplitudes())[3]);
        a += pa;
        b += pb;
        a2 += pa * pa;
        b2 += pb * pb;
    }
    a /= samples;
    b /= samples;
    const double se = std::sqrt((a2 / samples - a * a + b2 / samples - b * b) / samples);
    EXPECT_NEAR(a, b, 4 * se);
}

TEST(haar_random_unitary, is_unitary) {
    Rng rng(11);
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(haar_random_unitary(n, rng).is_unitary());
}

TEST(pauli_to_dense, examples) {
    Eigen::MatrixXcd zi = Eigen::MatrixXcd::Zero(4, 4);
    zi.diagonal() << 1, 1, -1, -1;
    EXPECT_LT(testutil::max_abs_diff(pauli_matrix("ZI"), zi), 1e-15);
    EXPECT_LT(testutil::max_abs_diff(pauli_matrix("III"), Eigen::MatrixXcd::Identity(8, 8)), 1e-15);
    EXPECT_LT(testutil::max_abs_diff(pauli_matrix("-X"), -pauli_matrix("X")), 1e-15);
    Eigen::MatrixXcd y(2, 2);
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    EXPECT_LT(testutil::max_abs_diff(pauli_matrix("Y"), y), 1e-15);
}

TEST(pauli_decompose, round_trip_and_coefficients) {
    Rng rng(12);
    for (int n = 1; n <= 4; ++n) {
        const Eigen::MatrixXcd a = testutil::random_matrix(Eigen::Index{1} << n, rng);
        const Eigen::VectorXcd c = pauli_decompose(a, n);
        EXPECT_LT(testutil::max_abs_diff(pauli_compose(c, n), a), 1e-12);
        for (int k = 0; k < 5; ++k) {
            const PauliString p = testutil::random_pauli(n, rng).with_phase(0);
            const cplx direct = pauli_coefficient(a, n, p.x_mask(), p.z_mask());
            const cplx via_trace = (pauli_to_dense(p).matrix().adjoint() * a).trace() / static_cast<double>(1 << n);
            EXPECT_LT(std::abs(direct - via_trace), 1e-12);
            EXPECT_LT(std::abs(c[static_cast<Eigen::Index>((p.x_mask() << n) | p.z_mask())] - via_trace), 1e-12);
        }
    }
}

TEST(dense_operator, structure_checks) {
    Rng rng(13);
    EXPECT_TRUE(testutil::random_density(2, rng).is_psd());
    EXPECT_FALSE((pauli_to_dense(PauliString::parse("Z"))).is_psd());
    const DenseOperator h = testutil::random_hermitian(2, rng);
    EXPECT_NEAR(std::abs(h.traceless_part().trace()), 0.0, 1e-12);
    EXPECT_THROW(StateVector::from_amplitudes(Eigen::VectorXcd::Ones(3)), std::invalid_argument);
    EXPECT_THROW(StateVector::from_amplitudes(Eigen::VectorXcd::Ones(4)), std::invalid_argument);
}
