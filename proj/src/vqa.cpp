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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

namespace aiso {

std::string to_string(Problem problem) { return problem == Problem::Vqsp ? "vqsp" : "vqcs"; }

Problem parse_problem(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "vqsp") return Problem::Vqsp;
    if (s == "vqcs") return Problem::Vqcs;
    throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

CostFunction make_cost(Problem kind, AnsatzDescriptor ansatz, StateVector target) {
    const int expect = kind == Problem::Vqsp ? ansatz.n : 2 * ansatz.n;
    if (target.num_qubits() != expect) {
        throw std::invalid_argument("make_cost: target has " + std::to_string(target.num_qubits()) + " qubits, expected " +
                                    std::to_string(expect));
    }
    if (std::abs(target.norm() - 1.0) > 1e-9) throw std::invalid_argument("make_cost: target not normalized");
    return CostFunction{kind, std::move(target), std::move(ansatz), 1.0};
}

StateVector probe_state(const CostFunction &cost, const Eigen::VectorXd &params) {
    if (cost.kind == Problem::Vqcs) return vectorize_unitary(cost.ansatz, params);
    return apply_ansatz(cost.ansatz, params, StateVector::zero(cost.ansatz.n), Direction::Adjoint);
}

Mps probe_mps(const CostFunction &cost, const Eigen::VectorXd &params) {
    if (cost.kind == Problem::Vqcs) {
        Mps m = maximally_entangled_mps(cost.ansatz.n);
        apply_ansatz_mps(cost.ansatz, params, m, Direction::Forward, cost.ansatz.n);
        return m;
    }
    Mps m = Mps::product_state(Bitstring(cost.ansatz.n, 0));
    apply_ansatz_mps(cost.ansatz, params, m, Direction::Adjoint);
    return m;
}

double exact_cost(const CostFunction &cost, const Eigen::VectorXd &params) {
    const double f = std::norm(cost.target.inner(probe_state(cost, params)));
    return std::clamp(1.0 - f, 0.0, 1.0);
}

double shot_cost(const CostFunction &cost, const Eigen::VectorXd &params, int64_t shots, Rng &rng,
                 BudgetLedger *ledger) {
    if (shots < 1) throw std::invalid_argument("shot_cost: shots must be >= 1");
    if (ledger != nullptr) ledger->charge_shots(shots);
    const double p = std::clamp(1.0 - exact_cost(cost, params), 0.0, 1.0);
    const int64_t hits = std::binomial_distribution<int64_t>(shots, p)(rng);
    return 1.0 - static_cast<double>(hits) / static_cast<double>(shots);
}

double shadow_cost(const CostFunction &cost, const Eigen::VectorXd &params, const ShadowSet &shadows) {
    if (shadows.num_qubits() != cost.num_qubits()) {
        throw std::invalid_argument("shadow_cost: shadow set has " + std::to_string(shadows.num_qubits()) +
                                    " qubits, cost needs " + std::to_string(cost.num_qubits()));
    }
    if (shadows.backend() == ShadowBackend::Mps) {
        const Mps phi = probe_mps(cost, params);
        return 1.0 - estimate_expectation_mps(shadows, [&](const Mpo &m) { return m.expectation(phi).real(); });
    }
    const StateVector phi = probe_state(cost, params);
    const Eigen::VectorXcd &v = phi.amplitudes();
    return 1.0 - estimate_expectation(shadows, [&](const DenseOperator &g) { return v.dot(g.matrix() * v).real(); });
}

bool frobenius_invariance_check(const DenseOperator &observable, const DenseOperator &unitary, double tol) {
    if (observable.num_qubits() != unitary.num_qubits()) throw std::invalid_argument("frobenius_invariance_check: size mismatch");
    const Eigen::MatrixXcd rotated = unitary.matrix() * observable.matrix() * unitary.matrix().adjoint();
    return std::abs(rotated.norm() - observable.frobenius_norm()) <= tol;
}

}  // namespace aiso
