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
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "aiso/ansatz.hpp"
#include "aiso/budget.hpp"
#include "aiso/linalg.hpp"
#include "aiso/mps.hpp"
#include "aiso/shadows.hpp"

namespace aiso {

/// VQSP: infidelity 1 - |<psi| U(theta)^dagger |0>|^2.
/// VQCS: Hilbert-Schmidt cost 1 - |tr(U(theta)^dagger V)|^2 / 4^n through |V> = (I x V)|Phi>.
enum class Problem { Vqsp, Vqcs };

std::string to_string(Problem problem);
Problem parse_problem(std::string_view name);

struct CostFunction {
    Problem kind = Problem::Vqsp;
    /// |psi> on n qubits, or |V> on 2n qubits.
    StateVector target;
    AnsatzDescriptor ansatz;
    double observable_norm = 1.0;

    /// Size of the register the shadows live on.
    int num_qubits() const { return target.num_qubits(); }
};

/// Validates the register size and normalization of `target`.
CostFunction make_cost(Problem kind, AnsatzDescriptor ansatz, StateVector target);

/// The pure state whose projector is the observable: U^dagger |0> or |U>.
StateVector probe_state(const CostFunction &cost, const Eigen::VectorXd &params);
Mps probe_mps(const CostFunction &cost, const Eigen::VectorXd &params);

double exact_cost(const CostFunction &cost, const Eigen::VectorXd &params);
/// Binomial estimate from `shots` projective measurements; charges the ledger first.
double shot_cost(const CostFunction &cost, const Eigen::VectorXd &params, int64_t shots, Rng &rng,
                 BudgetLedger *ledger = nullptr);
/// 1 - median-of-means estimate of <probe| rho |probe>. Not clamped.
double shadow_cost(const CostFunction &cost, const Eigen::VectorXd &params, const ShadowSet &shadows);

/// ||O||_F == ||U O U^dagger||_F within tol.
bool frobenius_invariance_check(const DenseOperator &observable, const DenseOperator &unitary, double tol = 1e-9);

}  // namespace aiso
