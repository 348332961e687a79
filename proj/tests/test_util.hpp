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

#include <Eigen/Dense>

#include "aiso/common.hpp"
#include "aiso/linalg.hpp"

namespace aiso::testutil {

inline Eigen::MatrixXcd random_matrix(Eigen::Index dim, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = cplx(g(rng), g(rng));
    }
    return m;
}

inline DenseOperator random_hermitian(int n, Rng &rng) {
    const Eigen::MatrixXcd m = random_matrix(Eigen::Index{1} << n, rng);
    return DenseOperator(n, (m + m.adjoint()) / 2.0);
}

/// Random density matrix: Wishart-normalized.
inline DenseOperator random_density(int n, Rng &rng) {
    const Eigen::MatrixXcd m = random_matrix(Eigen::Index{1} << n, rng);
    Eigen::MatrixXcd rho = m * m.adjoint();
    rho /= rho.trace().real();
    return DenseOperator(n, rho);
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline PauliString random_pauli(int n, Rng &rng) {
    const uint64_t mask = (1ULL << n) - 1;
    return PauliString(n, rng() & mask, rng() & mask, static_cast<int>(uniform_index(rng, 2)) * 2);
}

}  // namespace aiso::testutil
