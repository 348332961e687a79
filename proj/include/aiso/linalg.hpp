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

// Dense statevector / operator simulation for small registers. This is the
// ground truth every other backend is checked against.
//
// Convention: qubit 0 is the most significant bit of a basis index, so the
// amplitude of |b_0 b_1 ... b_{n-1}> sits at index sum_q b_q 2^(n-1-q).

#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aiso/common.hpp"
#include "aiso/pauli.hpp"

namespace aiso {

inline constexpr int kMaxDenseQubits = 12;

class StateVector {
  public:
    StateVector() = default;

    /// |0...0>.
    static StateVector zero(int n);
    static StateVector basis(int n, uint64_t index);
    static StateVector basis(const Bitstring &bits) { return basis(bits.size(), bits.value()); }
    /// Takes ownership of amplitudes; throws unless the length is 2^n and the
    /// norm is 1 within 1e-10 (or `normalize` is set and the norm is nonzero).
    static StateVector from_amplitudes(Eigen::VectorXcd amplitudes, bool normalize = false);

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return amp_.size(); }
    const Eigen::VectorXcd &amplitudes() const { return amp_; }
    /// Mutable access for in-place kernels. Callers keep the norm at 1.
    Eigen::VectorXcd &mutable_amplitudes() { return amp_; }
    cplx operator[](Eigen::Index i) const { return amp_[i]; }

    double norm() const { return amp_.norm(); }
    /// <this|other>.
    cplx inner(const StateVector &other) const;
    double probability(uint64_t index) const { return std::norm(amp_[static_cast<Eigen::Index>(index)]); }

  private:
    StateVector(int n, Eigen::VectorXcd amp) : n_(n), amp_(std::move(amp)) {}

    int n_ = 0;
    Eigen::VectorXcd amp_;
};

class DenseOperator {
  public:
    DenseOperator() = default;
    DenseOperator(int n, Eigen::MatrixXcd matrix);

    static DenseOperator identity(int n);
    static DenseOperator zero(int n);
    /// |psi><psi|.
    static DenseOperator projector(const StateVector &psi);

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return m_.rows(); }
    const Eigen::MatrixXcd &matrix() const { return m_; }
    Eigen::MatrixXcd &mutable_matrix() { return m_; }
    cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    bool is_hermitian(double tol = kStructureTol) const;
    bool is_unitary(double tol = kStructureTol) const;
    /// Hermitian with smallest eigenvalue >= -tol.
    bool is_psd(double tol = 1e-8) const;
    cplx trace() const { return m_.trace(); }
    double frobenius_norm() const { return m_.norm(); }
    DenseOperator adjoint() const { return DenseOperator(n_, m_.adjoint()); }
    /// O - tr(O)/2^n I.
    DenseOperator traceless_part() const;

    DenseOperator operator+(const DenseOperator &rhs) const;
    DenseOperator operator-(const DenseOperator &rhs) const;
    DenseOperator operator*(const DenseOperator &rhs) const;
    DenseOperator operator*(cplx scalar) const;

  private:
    int n_ = 0;
    Eigen::MatrixXcd m_;
};

/// Applies a k-qubit gate (2^k x 2^k) to `targets`. The first target is the
/// most significant bit of the gate's own index. Throws on a dimension mismatch
/// or a repeated / out-of-range target.
StateVector apply_gate(const StateVector &state, const Eigen::MatrixXcd &gate, std::span<const int> targets);

/// In-place kernels used on hot paths. No validation.
void apply_1q_inplace(Eigen::VectorXcd &amp, int n, int qubit, const Eigen::Matrix2cd &gate);
void apply_2q_inplace(Eigen::VectorXcd &amp, int n, int q0, int q1, const Eigen::Matrix4cd &gate);
/// 2-qubit gate with real entries (Ry / CNOT ansatz blocks).
void apply_2q_inplace(Eigen::VectorXcd &amp, int n, int q0, int q1, const Eigen::Matrix4d &gate);
void apply_cnot_inplace(Eigen::VectorXcd &amp, int n, int control, int target);

/// Samples u with probability |<u|psi>|^2 and returns (u, |u>).
std::pair<Bitstring, StateVector> measure_standard_basis(const StateVector &state, Rng &rng);
/// Sampling only, no post-measurement state.
uint64_t sample_basis_index(const Eigen::VectorXcd &amp, Rng &rng);

/// tr(|psi><psi| O) for Hermitian O; throws on a non-Hermitian observable.
double expectation(const StateVector &state, const DenseOperator &observable);
/// tr(rho O) for Hermitian O.
double expectation(const DenseOperator &rho, const DenseOperator &observable);

/// Haar-distributed pure state (normalized complex Gaussian vector).
StateVector haar_random_state(int n, Rng &rng);
/// Haar-distributed unitary on n qubits (QR of a Ginibre matrix with phase fix).
DenseOperator haar_random_unitary(int n, Rng &rng);

DenseOperator pauli_to_dense(const PauliString &p);
/// Adds coeff * P to `m` without materializing P.
void add_pauli_inplace(Eigen::MatrixXcd &m, int n, uint64_t x_mask, uint64_t z_mask, cplx coeff);
/// tr(P^dagger A) / 2^n for the +1-phase Pauli with the given masks.
cplx pauli_coefficient(const Eigen::MatrixXcd &a, int n, uint64_t x_mask, uint64_t z_mask);

/// All 4^n coefficients c with A = sum c(x,z) P(x,z), P(x,z) the +1-phase
/// letter-form Pauli; entry (x << n) | z. Walsh-Hadamard based, O(4^n n).
Eigen::VectorXcd pauli_decompose(const Eigen::MatrixXcd &a, int n);
/// Inverse of pauli_decompose.
Eigen::MatrixXcd pauli_compose(const Eigen::VectorXcd &coeffs, int n);
/// Real-coefficient variant (Hermitian operators).
Eigen::MatrixXcd pauli_compose(const Eigen::VectorXd &coeffs, int n);

}  // namespace aiso
