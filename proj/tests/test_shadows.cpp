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


#include "aiso/shadows.hpp"

#include <cmath>
#include <iostream>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace aiso;

namespace {

// Delta^{-1}(U^dagger |u><u| U) built densely, independent of the stabilizer path.
DenseOperator dense_shadow_oracle(const Snapshot &s, const PatternWeightTable &t) {
    const int n = s.outcome.size();
    Eigen::VectorXcd phi = StateVector::basis(s.outcome).amplitudes();
    s.circuit.apply_adjoint_inplace(phi);
    return apply_inverse_channel(t, DenseOperator(n, phi * phi.adjoint()));
}

StatePreparer fixed(const StateVector &psi) {
    return [psi] { return psi; };
}

StateVector plus_state(int n) {
    const double a = std::pow(2.0, -0.5 * n);
    return StateVector::from_amplitudes(Eigen::VectorXcd::Constant(Eigen::Index{1} << n, a));
}

}  // namespace

TEST(acquire_snapshots, identity_blocks_on_zero_state) {
    const BrickworkLayout l(4, 3);
    Rng rng(1);
    AcquireOptions opt;
    opt.identity_blocks = true;
    for (const Snapshot &s : acquire_snapshots(fixed(StateVector::zero(4)), l, 50, rng, nullptr, opt)) {
        EXPECT_EQ(s.outcome.to_string(), "0000");
        EXPECT_EQ(s.circuit, BrickworkCircuit::identity(l));
    }
}

TEST(acquire_snapshots, ledger_accounting) {
    const BrickworkLayout l(3, 2);
    Rng rng(2);
    BudgetLedger ledger;
    acquire_snapshots(fixed(StateVector::zero(3)), l, 17, rng, &ledger);
    EXPECT_EQ(ledger.acquisition_copies(), 17);
    acquire_snapshots(fixed(StateVector::zero(3)), l, 5, rng, &ledger);
    EXPECT_EQ(ledger.copies_consumed(), 22);
    BudgetLedger tight(10);
    EXPECT_THROW(acquire_snapshots(fixed(StateVector::zero(3)), l, 11, rng, &tight), BudgetExhausted);
    EXPECT_EQ(tight.copies_consumed(), 0);
    EXPECT_THROW(acquire_snapshots(fixed(StateVector::zero(3)), l, 0, rng), std::invalid_argument);
}

TEST(acquire_snapshots, uniform_outcomes_chi_square) {
    const BrickworkLayout l(3, 2);
    Rng rng(3);
    AcquireOptions opt;
    opt.uniform_outcomes = true;
    const int count = 16000;
    std::vector<int> hist(8, 0);
    for (const Snapshot &s : acquire_snapshots(nullptr, l, count, rng, nullptr, opt)) ++hist[s.outcome.value()];
    double chi2 = 0.0;
    for (int h : hist) chi2 += (h - count / 8.0) * (h - count / 8.0) / (count / 8.0);
    EXPECT_LT(chi2, 24.32);  // 7 dof, p = 0.001
}

TEST(materialize_dense, two_qubit_identity_example) {
    const BrickworkLayout l(2, 1);
    const PatternWeightTable t = pattern_weights(l);
    const Snapshot s{BrickworkCircuit::identity(l), Bitstring::parse("00")};
    Eigen::MatrixXcd expect = pauli_to_dense(PauliString::parse("II")).matrix();
    for (const char *p : {"ZI", "IZ", "ZZ"}) expect += 5.0 * pauli_to_dense(PauliString::parse(p)).matrix();
    expect /= 4.0;
    EXPECT_LT(testutil::max_abs_diff(materialize_dense(s, t).matrix(), expect), 1e-13);
}

TEST(materialize_dense, matches_dense_oracle_unit_trace_hermitian) {
    Rng rng(4);
    for (auto [n, d] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{4, 3}, std::pair{5, 2}}) {
        const BrickworkLayout l(n, d);
        const PatternWeightTable t = pattern_weights(l);
        const StateVector psi = haar_random_state(n, rng);
        for (const Snapshot &s : acquire_snapshots(fixed(psi), l, 25, rng)) {
            const DenseOperator shadow = materialize_dense(s, t);
            EXPECT_NEAR(std::abs(shadow.trace() - 1.0), 0.0, 1e-12);
            EXPECT_TRUE(shadow.is_hermitian(1e-12));
            EXPECT_LT(testutil::max_abs_diff(shadow.matrix(), dense_shadow_oracle(s, t).matrix()), 1e-10);
        }
    }
    const PatternWeightTable other = pattern_weights(BrickworkLayout(4, 2));
    const Snapshot s{BrickworkCircuit::identity(BrickworkLayout(4, 3)), Bitstring::parse("0000")};
    EXPECT_THROW(materialize_dense(s, other), std::invalid_argument);
}

TEST(materialize_dense, unbiased_on_plus_state) {
    const int n = 2;
    const BrickworkLayout l(n, 2);
    const PatternWeightTable t = pattern_weights(l);
    const StateVector plus = plus_state(n);
    Rng rng(5);
    const int count = 100000;
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(4, 4);
    Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(4, 4);
    Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(4, 4);
    for (const Snapshot &s : acquire_snapshots(fixed(plus), l, count, rng)) {
        const Eigen::MatrixXcd m = materialize_dense(s, t).matrix();
        sum += m;
        sq_re += m.real().cwiseAbs2();
        sq_im += m.imag().cwiseAbs2();
    }
    const Eigen::MatrixXcd mean = sum / count;
    const Eigen::MatrixXcd rho = DenseOperator::projector(plus).matrix();
    for (Eigen::Index r = 0; r < 4; ++r) {
        for (Eigen::Index c = 0; c < 4; ++c) {
            const double se_re = std::sqrt((sq_re(r, c) / count - std::pow(mean(r, c).real(), 2)) / count);
            const double se_im = std::sqrt(std::max(0.0, sq_im(r, c) / count - std::pow(mean(r, c).imag(), 2)) / count);
            EXPECT_NEAR(mean(r, c).real(), rho(r, c).real(), 3 * se_re + 1e-12);
            EXPECT_NEAR(mean(r, c).imag(), rho(r, c).imag(), 3 * se_im + 1e-12);
        }
    }
}

TEST(snapshot_value, matches_dense_trace) {
    Rng rng(6);
    const BrickworkLayout l(4, 3);
    const PatternWeightTable t = pattern_weights(l);
    const DenseOperator o = testutil::random_hermitian(4, rng);
    const Eigen::VectorXd coeffs = inverse_channel_coefficients(t, o);
    for (const Snapshot &s : acquire_snapshots(fixed(haar_random_state(4, rng)), l, 30, rng)) {
        const double dense = (o.matrix() * materialize_dense(s, t).matrix()).trace().real();
        EXPECT_NEAR(snapshot_value(s, coeffs), dense, 1e-10);
    }
}

TEST(materialize_mps, matches_dense) {
    Rng rng(7);
    for (auto [n, d] : {std::pair{4, 2}, std::pair{6, 3}, std::pair{8, 3}}) {
        const BrickworkLayout l(n, d);
        const PatternWeightTable t = pattern_weights(l);
        const ChannelMpo ch = channel_mpo(t);
        const StateVector psi = haar_random_state(n, rng);
        for (const Snapshot &s : acquire_snapshots(fixed(psi), l, 3, rng)) {
            const Mpo m = materialize_mps(s, ch);
            EXPECT_LT(testutil::max_abs_diff(m.to_dense().matrix(), materialize_dense(s, t).matrix()), 1e-9);
            EXPECT_NEAR(std::abs(m.trace() - 1.0), 0.0, 1e-10);
            EXPECT_LE(snapshot_state_mps(s).max_bond(), 1 << d);
        }
    }
}

TEST(materialize_mps, many_snapshots_n8) {
    // Larger SVDs inside compress(); a divide-and-conquer complex SVD got these wrong.
    Rng rng(71);
    const BrickworkLayout l(8, 3);
    const PatternWeightTable t = pattern_weights(l);
    const ChannelMpo ch = channel_mpo(t);
    const StateVector psi = haar_random_state(8, rng);
    double worst = 0.0;
    for (const Snapshot &s : acquire_snapshots(fixed(psi), l, 100, rng)) {
        worst = std::max(worst, testutil::max_abs_diff(materialize_mps(s, ch).to_dense().matrix(), materialize_dense(s, t).matrix()));
    }
    EXPECT_LT(worst, 1e-9);
}

TEST(materialize_mps, identity_blocks_product_state) {
    const BrickworkLayout l(6, 3);
    const Snapshot s{BrickworkCircuit::identity(l), Bitstring::parse("010011")};
    EXPECT_EQ(snapshot_state_mps(s).max_bond(), 1);
    const Mpo m = materialize_mps(s, channel_mpo(pattern_weights(l)));
    EXPECT_NEAR(std::abs(m.trace() - 1.0), 0.0, 1e-12);
}

TEST(median_of_means, examples) {
    EXPECT_DOUBLE_EQ(median_of_means(std::vector<double>(12, 7.0), 3, 4), 7.0);
    EXPECT_DOUBLE_EQ(median_of_means({1, 1, 2, 2, 100, 100}, 3, 2), 2.0);
    EXPECT_DOUBLE_EQ(median_of_means({1, 3}, 2, 1), 2.0);
    EXPECT_DOUBLE_EQ(median({5, 1, 4, 2}), 3.0);
    EXPECT_THROW(median_of_means({}, 1, 1), std::invalid_argument);
    EXPECT_THROW(median_of_means({1, 2, 3}, 2, 2), std::invalid_argument);
    EXPECT_THROW(median({}), std::invalid_argument);
}

TEST(shadow_set, group_means_match_materialized_shadows) {
    Rng rng(8);
    const BrickworkLayout l(3, 2);
    const PatternWeightTable t = pattern_weights(l);
    const StateVector psi = haar_random_state(3, rng);
    const ShadowSet set = acquire_shadow_set(fixed(psi), t, 4, 25, 99);
    ASSERT_EQ(set.snapshots().size(), 100u);
    for (int64_t g = 0; g < 4; ++g) {
        Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(8, 8);
        for (int64_t j = 0; j < 25; ++j) sum += materialize_dense(set.snapshots()[static_cast<size_t>(g * 25 + j)], t).matrix();
        const DenseOperator &gm = set.group_means()[static_cast<size_t>(g)];
        EXPECT_LT(testutil::max_abs_diff(gm.matrix(), sum / 25.0), 1e-9);
        EXPECT_NEAR(std::abs(gm.trace() - 1.0), 0.0, 1e-12);
    }
    EXPECT_NEAR(estimate_expectation(set, [](const DenseOperator &g) { return g.trace().real(); }), 1.0, 1e-12);
}

TEST(shadow_set, streaming_and_store_paths_agree_bitwise) {
    Rng rng(9);
    const BrickworkLayout l(4, 3);
    const PatternWeightTable t = pattern_weights(l);
    const StateVector psi = haar_random_state(4, rng);
    BudgetLedger ledger;
    const ShadowSet kept = acquire_shadow_set(fixed(psi), t, 3, 200, 7, &ledger);
    const ShadowSet streamed = acquire_shadow_set(fixed(psi), t, 3, 200, 7, &ledger, ShadowBackend::Dense, false);
    EXPECT_EQ(ledger.acquisition_copies(), 1200);
    EXPECT_TRUE(streamed.snapshots().empty());
    const ShadowSet rebuilt = ShadowSet::from_snapshots(t, 3, 200, kept.snapshots());
    for (size_t g = 0; g < 3; ++g) {
        EXPECT_EQ(kept.group_means()[g].matrix(), streamed.group_means()[g].matrix());
        EXPECT_EQ(kept.group_means()[g].matrix(), rebuilt.group_means()[g].matrix());
    }
}

TEST(estimate_expectation, equals_per_snapshot_median_of_means) {
    Rng rng(10);
    const BrickworkLayout l(4, 2);
    const PatternWeightTable t = pattern_weights(l);
    const ShadowSet set = acquire_shadow_set(fixed(haar_random_state(4, rng)), t, 5, 40, 3);
    for (int k = 0; k < 20; ++k) {
        const DenseOperator o = testutil::random_hermitian(4, rng);
        const Eigen::VectorXd coeffs = inverse_channel_coefficients(t, o);
        std::vector<double> per;
        for (const Snapshot &s : set.snapshots()) per.push_back(snapshot_value(s, coeffs));
        const double grouped = estimate_expectation(set, [&](const DenseOperator &g) { return (o.matrix() * g.matrix()).trace().real(); });
        EXPECT_NEAR(grouped, median_of_means(per, 5, 40), 1e-9);
    }
}

TEST(estimate_expectation, mps_backend_matches_dense) {
    Rng rng(11);
    const BrickworkLayout l(4, 2);
    const PatternWeightTable t = pattern_weights(l);
    const ShadowSet dense = acquire_shadow_set(fixed(haar_random_state(4, rng)), t, 3, 20, 5);
    const ShadowSet mps = ShadowSet::from_snapshots(t, 3, 20, dense.snapshots(), ShadowBackend::Mps);
    ASSERT_EQ(mps.snapshot_mpos().size(), 60u);
    for (int k = 0; k < 5; ++k) {
        const StateVector phi = haar_random_state(4, rng);
        const Mps phi_mps = Mps::from_statevector(phi);
        const double a = estimate_expectation(dense, [&](const DenseOperator &g) { return expectation(phi, g); });
        const double b = estimate_expectation_mps(mps, [&](const Mpo &m) { return m.expectation(phi_mps).real(); });
        EXPECT_NEAR(a, b, 1e-9);
    }
}

TEST(estimate_expectation, concentrates_on_zero_state) {
    const BrickworkLayout l(4, 3);
    const PatternWeightTable t = pattern_weights(l);
    const ShadowSet set = acquire_shadow_set(fixed(StateVector::zero(4)), t, 10, 1000, 12);
    const DenseOperator z0 = pauli_to_dense(PauliString::parse("ZIII"));
    EXPECT_NEAR(estimate_expectation(set, [&](const DenseOperator &g) { return (z0.matrix() * g.matrix()).trace().real(); }),
                1.0, 0.05);
}

TEST(shadow_set, group_mean_hook) {
    const BrickworkLayout l(2, 1);
    EXPECT_THROW(ShadowSet::from_group_means(l, 2, 1, {DenseOperator::identity(2)}), std::invalid_argument);
    const ShadowSet s = ShadowSet::from_group_means(l, 1, 1, {DenseOperator::identity(2)});
    EXPECT_EQ(s.copies(), 1);
    EXPECT_THROW(estimate_expectation_mps(s, [](const Mpo &) { return 0.0; }), std::logic_error);
}

TEST(plan_samples, arithmetic_examples) {
    const SamplePlan p = plan_samples(0.1, 0.1, 20, 1e4, 1.0, Design::OneDesign);
    EXPECT_EQ(p.t1, 26);
    EXPECT_NEAR(2.0 * std::log(380000.0), 25.6959, 1e-4);
    EXPECT_EQ(p.t2, 272000);
    const SamplePlan q = plan_samples(0.1, 0.2, 10, 10, 1.0, Design::TwoDesign);
    EXPECT_EQ(q.t1, 11);     // 2 ln 220 = 10.78
    EXPECT_EQ(q.t2, 71400);  // 3400 * 21
    EXPECT_EQ(plan_samples(0.1, 0.2, 10, 50, 1.0, Design::TwoDesign).t1, 15);  // 2 ln 1100 = 14.006
    EXPECT_THROW(plan_samples(0.1, 0.1, 10, 1, 1.0, Design::OneDesign), std::invalid_argument);
    EXPECT_THROW(plan_samples(0.25, 0.1, 2, 1, 1.0, Design::TwoDesign), std::invalid_argument);
    EXPECT_THROW(plan_samples(1.5, 0.1, 20, 1, 1.0, Design::OneDesign), std::invalid_argument);
    EXPECT_THROW(plan_samples(0.1, 0.1, 20, 0.5, 1.0, Design::OneDesign), std::invalid_argument);
}

TEST(plan_samples, monotone_in_c_and_inverse_epsilon) {
    for (Design design : {Design::OneDesign, Design::TwoDesign}) {
        SamplePlan prev = plan_samples(0.1, 0.5, 20, 1, 1.0, design);
        for (double c : {2.0, 10.0, 1e2, 1e3, 1e5}) {
            const SamplePlan p = plan_samples(0.1, 0.5, 20, c, 1.0, design);
            EXPECT_GE(p.t1, prev.t1);
            EXPECT_GE(p.t2, prev.t2);
            prev = p;
        }
        prev = plan_samples(0.1, 0.9, 20, 10, 1.0, design);
        for (double eps : {0.5, 0.2, 0.1, 0.05}) {
            const SamplePlan p = plan_samples(0.1, eps, 20, 10, 1.0, design);
            EXPECT_GE(p.t1, prev.t1);
            EXPECT_GE(p.t2, prev.t2);
            prev = p;
        }
    }
}

TEST(shadow_norm, exhaustive_two_qubit_oracle) {
    const BrickworkLayout l(2, 1);
    const PatternWeightTable t = pattern_weights(l);
    const DenseOperator o = DenseOperator::projector(StateVector::zero(2)).traceless_part();
    Rng rng(13);
    const StateVector psi = haar_random_state(2, rng);
    // Average over all 11520 Cliffords and 4 outcomes, dense arithmetic only.
    double scrambled = 0.0;
    double state_dep = 0.0;
    for (size_t i = 0; i < kNumClifford2; ++i) {
        const Eigen::Matrix4cd &u = clifford2_tables()[i].unitary;
        const Eigen::Vector4cd rotated = u * psi.amplitudes();
        for (int b = 0; b < 4; ++b) {
            const Eigen::VectorXcd phi = u.adjoint().col(b);
            const double v = (o.matrix() * apply_inverse_channel(t, DenseOperator(2, phi * phi.adjoint())).matrix()).trace().real();
            scrambled += 0.25 * v * v;
            state_dep += std::norm(rotated[b]) * v * v;
        }
    }
    scrambled /= kNumClifford2;
    state_dep /= kNumClifford2;
    const auto [e1, se1] = estimate_locally_scrambled_norm(l, o, 100000, rng);
    EXPECT_NEAR(e1, scrambled, 3 * se1);
    const auto [e2, se2] = estimate_state_shadow_norm(l, o, &psi, 100000, rng);
    EXPECT_NEAR(e2, state_dep, 3 * se2);
    std::cerr << "n=2 locally scrambled norm " << scrambled << ", state-dependent " << state_dep << "\n";
}

TEST(shadow_norm, zero_and_traceful_observables) {
    Rng rng(14);
    const BrickworkLayout l(4, 2);
    const auto [e, se] = estimate_locally_scrambled_norm(l, DenseOperator::zero(4), 100, rng);
    EXPECT_EQ(e, 0.0);
    EXPECT_EQ(se, 0.0);
    EXPECT_THROW(estimate_locally_scrambled_norm(l, DenseOperator::identity(4), 100, rng), std::invalid_argument);
}

TEST(shadow_norm, uniform_mode_reproduces_locally_scrambled) {
    const BrickworkLayout l(4, 2);
    const DenseOperator o = DenseOperator::projector(StateVector::zero(4)).traceless_part();
    Rng a(15);
    Rng b(15);
    EXPECT_EQ(estimate_locally_scrambled_norm(l, o, 1000, a), estimate_state_shadow_norm(l, o, nullptr, 1000, b));
}

TEST(shadow_norm, locally_scrambled_bound_n8) {
    // Smaller sample than the acceptance run.
    Rng rng(16);
    const int n = 8;
    const BrickworkLayout l(n, 3);
    const DenseOperator o = DenseOperator::projector(StateVector::zero(n)).traceless_part();
    const auto [e, se] = estimate_locally_scrambled_norm(l, o, 20000, rng);
    EXPECT_LE(e - 3 * se, 4.0 * (1.0 - std::pow(2.0, -n)));
}

TEST(verify_variance_bound, small_run_and_constant_observable) {
    Rng rng(17);
    const BrickworkLayout l(4, 2);
    const VarianceBoundReport r = verify_variance_bound(l, DenseOperator::projector(StateVector::zero(4)), 40, 300, rng);
    EXPECT_TRUE(r.satisfied);
    EXPECT_GT(r.variance_stderr, 0.0);
    EXPECT_DOUBLE_EQ(r.bound, 64.0);
    EXPECT_DOUBLE_EQ(r.bound_alt_exponent, 64.0);
    const VarianceBoundReport c = verify_variance_bound(l, DenseOperator::identity(4) * cplx(1.0 / 16), 10, 50, rng);
    EXPECT_EQ(c.variance, 0.0);
    EXPECT_EQ(c.mean_norm, 0.0);
    EXPECT_TRUE(c.satisfied);
}
