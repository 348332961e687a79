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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "aiso/ansatz.hpp"
#include "aiso/budget.hpp"
#include "aiso/optimize.hpp"
#include "aiso/shadows.hpp"
#include "aiso/vqa.hpp"

namespace aiso {

enum class Method { Aiso, Vqa, Exact };
enum class OptimizerKind { Spsa, Powell };
enum class TargetMode { Ansatz, Haar };

std::string to_string(Method m);
std::string to_string(OptimizerKind o);
std::string to_string(TargetMode t);
Method parse_method(std::string_view s);
OptimizerKind parse_optimizer(std::string_view s);
TargetMode parse_target_mode(std::string_view s);

struct ExperimentConfig {
    Problem problem = Problem::Vqsp;
    AnsatzFamily family = AnsatzFamily::ALA;
    int n = 8;
    int layers = 3;
    int shadow_depth = 3;
    Method method = Method::Aiso;
    /// Total copies per run; one run per entry.
    std::vector<int64_t> budgets{10000};
    OptimizerKind optimizer = OptimizerKind::Spsa;
    int64_t spsa_iterations = 5000;
    int64_t powell_evaluations = 1000;
    int instances = 5;
    uint64_t master_seed = 2026;
    /// AISO group count T1; T2 = budget / T1.
    int64_t t1 = 10;
    /// Family and depth the targets are drawn from (defaults: the optimized ansatz).
    std::optional<AnsatzFamily> target_family;
    int target_layers = 0;
    TargetMode target_mode = TargetMode::Ansatz;
    /// Evaluations per interval for interval-minimum curves.
    int64_t interval = 100;
    ShadowBackend backend = ShadowBackend::Dense;

    AnsatzFamily effective_target_family() const { return target_family.value_or(family); }
    int effective_target_layers() const { return target_layers > 0 ? target_layers : layers; }
    /// Function evaluations one optimization run performs.
    int64_t evaluations_per_run() const;
    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

/// Seeds for instance k, all split from the master seed.
struct InstanceSeeds {
    uint64_t instance = 0;
    uint64_t target = 0;
    uint64_t shadows = 0;
    uint64_t init = 0;
    uint64_t optimizer = 0;
    uint64_t shots = 0;
};
InstanceSeeds instance_seeds(uint64_t master_seed, int instance);

AnsatzDescriptor run_ansatz(const ExperimentConfig &config);
/// Cost function of instance k (target independent of method and budget).
CostFunction make_instance_cost(const ExperimentConfig &config, int instance);
/// Identifies the target in shadow-store headers.
std::string target_tag(const ExperimentConfig &config, int instance);

struct EvalRow {
    int64_t index = 0;
    double estimate = 0.0;  ///< value the optimizer saw
    double cost = 0.0;      ///< exact cost at the same parameters
    int64_t copies = 0;     ///< cumulative
};

struct InstanceRun {
    int instance = 0;
    std::vector<EvalRow> rows;
    Eigen::VectorXd final_params;
    double initial_cost = 0.0;
    double final_cost = 0.0;
    double lowest_cost = 0.0;
    /// Minimum exact cost inside the last interval of evaluations.
    double final_interval_min = 0.0;
    int64_t copies = 0;
    int64_t shots_per_evaluation = 0;
    bool budget_exhausted = false;
};

/// One optimization. With `shadows` supplied, AISO uses it and charges nothing;
/// otherwise AISO acquires budget copies from the instance seeds.
InstanceRun run_instance(const ExperimentConfig &config, int instance, int64_t budget, const ShadowSet *shadows = nullptr,
                         BudgetLedger *ledger = nullptr);

struct ShadowStoreHeader {
    int version = 1;
    int n = 0;
    int depth = 0;
    std::string layout = BrickworkLayout::kDescriptor;
    int64_t t1 = 0;
    int64_t t2 = 0;
    uint64_t seed = 0;
    std::string target;
};

struct ShadowStore {
    ShadowStoreHeader header;
    std::vector<Snapshot> snapshots;
};

/// Text store: one header line, then "idx1,idx2,...;bits" per snapshot.
void write_shadow_store(std::ostream &out, const ShadowStore &store);
ShadowStore read_shadow_store(std::istream &in);
void write_shadow_store_file(const std::string &path, const ShadowStore &store);
ShadowStore read_shadow_store_file(const std::string &path);

/// Acquires T1 x T2 snapshots of instance k's target (same draws as run_instance).
ShadowStore generate_shadow_store(const ExperimentConfig &config, int instance, int64_t t1, int64_t t2,
                                  BudgetLedger *ledger = nullptr);
ShadowSet shadow_set_from_store(const ShadowStore &store, ShadowBackend backend = ShadowBackend::Dense);

}  // namespace aiso
