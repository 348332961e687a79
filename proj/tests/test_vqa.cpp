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


#include "aiso/vqa.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace aiso;

namespace {

CostFunction vqsp_instance(AnsatzFamily f, int n, int layers, Rng &rng, Eigen::VectorXd *star = nullptr) {
    const AnsatzDescriptor d = build_ansatz(f, n, layers);
    const Eigen::VectorXd p = random_parameters(d, rng);
    if (star != nullptr) *star = p;
    return make_cost(Problem::Vqsp, d, apply_ansatz(d, p, StateVector::zero(n), Direction::Adjoint));
}

}  // namespace

TEST(exact_cost, vqsp_examples) {
    Rng rng(1);
    Eigen::VectorXd star;
    const CostFunction c = vqsp_instance(AnsatzFamily::ALA, 4, 3, rng, &star);
    EXPECT_NEAR(exact_cost(c, star), 0.0, 1e-12);
    // Target orthogonal to the probe.
    const AnsatzDescriptor d = build_ansatz(AnsatzFamily::ALA, 2, 1);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
    const CostFunction orth = make_cost(Problem::Vqsp, d, StateVector::basis(Bitstring::parse("01")));
    EXPECT_NEAR(exact_cost(orth, zero), 1.0, 1e-12);
    for (int k = 0; k < 50; ++k) {
        const double v = exact_cost(c, random_parameters(c.ansatz, rng));
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    EXPECT_THROW(make_cost(Problem::Vqsp, d, StateVector::zero(3)), std::invalid_argument);
}

TEST(exact_cost, vqcs_examples_and_trace_identity) {
    Rng rng(2);
    const AnsatzDescriptor d = build_ansatz(AnsatzFamily::ALA, 3, 2, BlockTemplate::Block8);
    const Eigen::VectorXd star = random_parameters(d, rng);
    const CostFunction c = make_cost(Problem::Vqcs, d, vectorize_unitary(d, star));
    EXPECT_NEAR(exact_cost(c, star), 0.0, 1e-12);
    // V = U(theta) X_0 has tr(U^dagger V) = tr(X_0) = 0.
    const DenseOperator u = ansatz_unitary(d, star);
    const DenseOperator x0 = pauli_to_dense(PauliString::parse("XII"));
    const CostFunction c1 = make_cost(Problem::Vqcs, d, vectorize_unitary(u * x0));
    EXPECT_NEAR(exact_cost(c1, star), 1.0, 1e-12);
    // Against the dense trace formula.
    const DenseOperator v = haar_random_unitary(3, rng);
    const CostFunction cv = make_cost(Problem::Vqcs, d, vectorize_unitary(v));
    for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd p = random_parameters(d, rng);
        const double dense = 1.0 - std::norm((ansatz_unitary(d, p).matrix().adjoint() * v.matrix()).trace()) / 64.0;
        EXPECT_NEAR(exact_cost(cv, p), dense, 1e-9);
    }
}

TEST(shot_cost, extremes_and_accounting) {
    Rng rng(3);
    Eigen::VectorXd star;
    const CostFunction c = vqsp_instance(AnsatzFamily::HEA, 3, 2, rng, &star);
    BudgetLedger ledger;
    EXPECT_EQ(shot_cost(c, star, 50, rng, &ledger), 0.0);
    EXPECT_EQ(ledger.shot_copies(), 50);
    const AnsatzDescriptor d = build_ansatz(AnsatzFamily::ALA, 2, 1);
    const CostFunction orth = make_cost(Problem::Vqsp, d, StateVector::basis(Bitstring::parse("01")));
    EXPECT_EQ(shot_cost(orth, Eigen::VectorXd::Zero(4), 10, rng, &ledger), 1.0);
    EXPECT_EQ(ledger.copies_consumed(), 60);
    BudgetLedger tight(5);
    EXPECT_THROW(shot_cost(c, star, 10, rng, &tight), BudgetExhausted);
    EXPECT_THROW(shot_cost(c, star, 0, rng), std::invalid_argument);
}

TEST(shot_cost, unbiased) {
    Rng rng(4);
    const CostFunction c = vqsp_instance(AnsatzFamily::ALA, 3, 2, rng);
    const Eigen::VectorXd p = random_parameters(c.ansatz, rng);
    const double truth = exact_cost(c, p);
    const int reps = 10000;
    double sum = 0.0;
    for (int i = 0; i < reps; ++i) sum += shot_cost(c, p, 10, rng);
    const double se = std::sqrt(truth * (1 - truth) / (10.0 * reps));
    EXPECT_NEAR(sum / reps, truth, 3 * se);
}

TEST(shadow_cost, exact_group_means_hook) {
    Rng rng(5);
    const CostFunction c = vqsp_instance(AnsatzFamily::TTN, 4, 1, rng);
    const DenseOperator rho = DenseOperator::projector(c.target);
    const ShadowSet set = ShadowSet::from_group_means(BrickworkLayout(4, 3), 3, 1, {rho, rho, rho});
    for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd p = random_parameters(c.ansatz, rng);
        EXPECT_NEAR(shadow_cost(c, p, set), exact_cost(c, p), 1e-9);
    }
    const ShadowSet wrong = ShadowSet::from_group_means(BrickworkLayout(3, 2), 1, 1, {DenseOperator::identity(3)});
    EXPECT_THROW(shadow_cost(c, random_parameters(c.ansatz, rng), wrong), std::invalid_argument);
}

TEST(shadow_cost, deterministic_and_ledger_free) {
    Rng rng(6);
    const CostFunction c = vqsp_instance(AnsatzFamily::ALA, 4, 2, rng);
    BudgetLedger ledger;
    const ShadowSet set = acquire_shadow_set([&] { return c.target; }, pattern_weights(BrickworkLayout(4, 3)), 5, 200, 9, &ledger);
    const Eigen::VectorXd p = random_parameters(c.ansatz, rng);
    const double first = shadow_cost(c, p, set);
    for (int k = 0; k < 20; ++k) EXPECT_EQ(shadow_cost(c, p, set), first);
    EXPECT_EQ(ledger.copies_consumed(), 1000);
}

TEST(shadow_cost, concentration_n4) {
    Rng rng(7);
    const CostFunction c = vqsp_instance(AnsatzFamily::ALA, 4, 3, rng);
    const ShadowSet set = acquire_shadow_set([&] { return c.target; }, pattern_weights(BrickworkLayout(4, 3)), 10, 1000, 21);
    int close = 0;
    for (int k = 0; k < 100; ++k) {
        const Eigen::VectorXd p = random_parameters(c.ansatz, rng);
        close += std::abs(shadow_cost(c, p, set) - exact_cost(c, p)) <= 0.05;
    }
    EXPECT_GE(close, 95);
}

TEST(shadow_cost, dense_and_mps_paths_agree) {
    Rng rng(8);
    const int n = 6;
    const CostFunction c = vqsp_instance(AnsatzFamily::ALA, n, 3, rng);
    const PatternWeightTable t = pattern_weights(BrickworkLayout(n, 3));
    const ShadowSet dense = acquire_shadow_set([&] { return c.target; }, t, 3, 10, 4);
    const ShadowSet mps = ShadowSet::from_snapshots(t, 3, 10, dense.snapshots(), ShadowBackend::Mps);
    for (int k = 0; k < 5; ++k) {
        const Eigen::VectorXd p = random_parameters(c.ansatz, rng);
        EXPECT_NEAR(shadow_cost(c, p, dense), shadow_cost(c, p, mps), 1e-8);
    }
    // Circuit synthesis on 2n = 4 qubits.
    const AnsatzDescriptor d = build_ansatz(AnsatzFamily::ALA, 2, 2, BlockTemplate::Block8);
    const CostFunction v = make_cost(Problem::Vqcs, d, vectorize_unitary(d, random_parameters(d, rng)));
    const PatternWeightTable t4 = pattern_weights(BrickworkLayout(4, 3));
    const ShadowSet vd = acquire_shadow_set([&] { return v.target; }, t4, 3, 10, 5);
    const ShadowSet vm = ShadowSet::from_snapshots(t4, 3, 10, vd.snapshots(), ShadowBackend::Mps);
    for (int k = 0; k < 5; ++k) {
        const Eigen::VectorXd p = random_parameters(d, rng);
        EXPECT_NEAR(shadow_cost(v, p, vd), shadow_cost(v, p, vm), 1e-8);
    }
}

TEST(frobenius_invariance_check, examples) {
    Rng rng(9);
    const DenseOperator p0 = DenseOperator::projector(StateVector::zero(2));
    EXPECT_TRUE(frobenius_invariance_check(p0, haar_random_unitary(2, rng)));
    Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    EXPECT_TRUE(frobenius_invariance_check(pauli_to_dense(PauliString::parse("ZI")), DenseOperator(2, cnot)));
    for (int k = 0; k < 50; ++k) {
        EXPECT_TRUE(frobenius_invariance_check(testutil::random_hermitian(3, rng), haar_random_unitary(3, rng)));
    }
    // A non-unitary "rotation" breaks it.
    EXPECT_FALSE(frobenius_invariance_check(p0, DenseOperator::identity(2) * cplx(2.0)));
}
