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

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aiso/brickwork.hpp"
#include "aiso/budget.hpp"
#include "aiso/channel.hpp"
#include "aiso/common.hpp"
#include "aiso/linalg.hpp"
#include "aiso/mps.hpp"

namespace aiso {

/// Dense shadows and group means hold 4^n Pauli sums.
inline constexpr int kMaxDenseShadowQubits = 10;

struct Snapshot {
    BrickworkCircuit circuit;
    Bitstring outcome;

    bool operator==(const Snapshot &) const = default;
};

/// Produces a fresh copy of the unknown state.
using StatePreparer = std::function<StateVector()>;

struct AcquireOptions {
    /// Every block forced to the identity Clifford (test hook).
    bool identity_blocks = false;
    /// Simulates rho = I / 2^n by drawing u uniformly; the preparer is not called.
    bool uniform_outcomes = false;
};

/// Samples `count` snapshots; charges `count` copies to `ledger` up front.
std::vector<Snapshot> acquire_snapshots(const StatePreparer &prepare, const BrickworkLayout &layout, int64_t count,
                                        Rng &rng, BudgetLedger *ledger = nullptr, const AcquireOptions &options = {});

/// Running sum of sign-weighted stabilizers, one int per Pauli (x << n) | z.
/// Exact integer arithmetic, so any grouping of the same snapshots agrees bit for bit.
class ShadowAccumulator {
  public:
    explicit ShadowAccumulator(int n);

    int num_qubits() const { return n_; }
    int64_t count() const { return count_; }
    void add(const Snapshot &snapshot);
    /// Mean of Delta^{-1}(U^dagger |u><u| U) over the added snapshots.
    DenseOperator mean(const PatternWeightTable &table) const;

  private:
    int n_;
    int64_t count_ = 0;
    std::vector<int64_t> sums_;
};

DenseOperator materialize_dense(const Snapshot &snapshot, const PatternWeightTable &table);

/// U^dagger |u> as an MPS (exact, bond at most 2^d).
Mps snapshot_state_mps(const Snapshot &snapshot);
/// Delta^{-1}(|phi><phi|) as a compressed MPO, phi = U^dagger |u>.
Mpo materialize_mps(const Snapshot &snapshot, const ChannelMpo &channel);

/// Pauli coefficients of Delta^{-1}(O) for Hermitian O, entry (x << n) | z.
Eigen::VectorXd inverse_channel_coefficients(const PatternWeightTable &table, const DenseOperator &observable);
/// tr(O rho_hat) for one snapshot in O(2^n), with coefficients from inverse_channel_coefficients.
double snapshot_value(const Snapshot &snapshot, const Eigen::VectorXd &coefficients);

/// Median; the two central values are averaged for even sizes.
double median(std::vector<double> values);
/// `values` is group-major, T1 groups of T2.
double median_of_means(const std::vector<double> &values, int64_t t1, int64_t t2);

enum class ShadowBackend { Dense, Mps };
std::string to_string(ShadowBackend b);
ShadowBackend parse_shadow_backend(std::string_view name);

class ShadowSet {
  public:
    ShadowSet() = default;

    /// Snapshots are group-major: group g holds [g * t2, (g + 1) * t2).
    static ShadowSet from_snapshots(const PatternWeightTable &table, int64_t t1, int64_t t2,
                                    std::vector<Snapshot> snapshots, ShadowBackend backend = ShadowBackend::Dense);
    /// Test hook: group means supplied directly.
    static ShadowSet from_group_means(BrickworkLayout layout, int64_t t1, int64_t t2,
                                      std::vector<DenseOperator> group_means);

    const BrickworkLayout &layout() const { return layout_; }
    int num_qubits() const { return layout_.num_qubits(); }
    int64_t t1() const { return t1_; }
    int64_t t2() const { return t2_; }
    int64_t copies() const { return t1_ * t2_; }
    ShadowBackend backend() const { return backend_; }
    const std::vector<Snapshot> &snapshots() const { return snapshots_; }
    const std::vector<DenseOperator> &group_means() const { return group_means_; }
    /// One compressed MPO per snapshot (MPS backend only).
    const std::vector<Mpo> &snapshot_mpos() const { return mpos_; }

  private:
    BrickworkLayout layout_;
    int64_t t1_ = 0;
    int64_t t2_ = 0;
    ShadowBackend backend_ = ShadowBackend::Dense;
    std::vector<Snapshot> snapshots_;
    std::vector<DenseOperator> group_means_;
    std::vector<Mpo> mpos_;
};

/// Acquires T1 * T2 snapshots, group g from make_rng(seed, g), and builds the set.
/// With keep_snapshots = false only the group means survive (dense backend).
ShadowSet acquire_shadow_set(const StatePreparer &prepare, const PatternWeightTable &table, int64_t t1, int64_t t2,
                             uint64_t seed, BudgetLedger *ledger = nullptr,
                             ShadowBackend backend = ShadowBackend::Dense, bool keep_snapshots = true);

/// Median over groups of evaluator(group mean).
double estimate_expectation(const ShadowSet &set, const std::function<double(const DenseOperator &)> &evaluator);
/// MPS backend: median of means of evaluator(per-snapshot MPO).
double estimate_expectation_mps(const ShadowSet &set, const std::function<double(const Mpo &)> &evaluator);

enum class Design { OneDesign, TwoDesign };

struct SamplePlan {
    int64_t t1 = 0;
    int64_t t2 = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    double m = 0.0;
    double c = 0.0;
    double frobenius_norm = 0.0;
    Design design = Design::OneDesign;
};

/// Natural log in T1; both counts rounded up.
SamplePlan plan_samples(double delta, double epsilon, double m, double c, double frobenius_norm, Design design);

/// Monte Carlo E_U 2^-n sum_u <O>^2_rho_hat with u uniform. Returns (estimate, stderr).
std::pair<double, double> estimate_locally_scrambled_norm(const BrickworkLayout &layout, const DenseOperator &observable,
                                                          int64_t samples, Rng &rng);
/// Same with u drawn by the Born rule from U state; nullptr means I / 2^n.
std::pair<double, double> estimate_state_shadow_norm(const BrickworkLayout &layout, const DenseOperator &observable,
                                                     const StateVector *state, int64_t samples, Rng &rng);

struct VarianceBoundReport {
    int num_states = 0;
    int64_t samples_per_state = 0;
    double frobenius_norm = 0.0;
    double mean_norm = 0.0;
    /// Sample variance of the per-state norm estimates (includes Monte Carlo noise, so biased upward).
    double variance = 0.0;
    /// variance minus the mean squared per-state stderr.
    double variance_noise_corrected = 0.0;
    double variance_stderr = 0.0;
    /// variance + 1.96 * variance_stderr.
    double ci_upper = 0.0;
    /// 64 ||O||_F^4, the asserted bound.
    double bound = 0.0;
    /// 64 ||O||_F^2, reported only.
    double bound_alt_exponent = 0.0;
    bool satisfied = false;
};

/// Samples Haar states sigma and estimates Var_sigma ||O~||^2_{sigma}.
VarianceBoundReport verify_variance_bound(const BrickworkLayout &layout, const DenseOperator &observable,
                                          int num_states, int64_t samples_per_state, Rng &rng);

}  // namespace aiso
