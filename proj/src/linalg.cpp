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

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace aiso {

namespace {

void check_dense_qubits(int n, const char *who) {
    if (n < 0 || n > kMaxDenseQubits) {
        throw std::invalid_argument(std::string(who) + ": qubit count out of range for dense simulation");
    }
}

// Inserts a zero bit at position `pos` of `v`.
inline uint64_t insert_zero(uint64_t v, int pos) {
    const uint64_t low = v & ((1ULL << pos) - 1);
    return ((v >> pos) << (pos + 1)) | low;
}

cplx i_power(int k) {
    static constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPhases[((k % 4) + 4) % 4];
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::zero(int n) { return basis(n, 0); }

StateVector StateVector::basis(int n, uint64_t index) {
    check_dense_qubits(n, "StateVector::basis");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (index >= static_cast<uint64_t>(dim)) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(dim);
    amp[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(n, std::move(amp));
}

StateVector StateVector::from_amplitudes(Eigen::VectorXcd amplitudes, bool normalize) {
    const Eigen::Index dim = amplitudes.size();
    if (dim < 1 || !std::has_single_bit(static_cast<uint64_t>(dim))) {
        throw std::invalid_argument("StateVector: length must be a power of two");
    }
    const int n = std::countr_zero(static_cast<uint64_t>(dim));
    check_dense_qubits(n, "StateVector");
    const double nrm = amplitudes.norm();
    if (normalize) {
        if (nrm == 0.0) throw std::invalid_argument("StateVector: cannot normalize the zero vector");
        amplitudes /= nrm;
    } else if (std::abs(nrm - 1.0) > 1e-10) {
        throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
    return StateVector(n, std::move(amplitudes));
}

cplx StateVector::inner(const StateVector &other) const {
    if (n_ != other.n_) throw std::invalid_argument("StateVector::inner: qubit count mismatch");
    return amp_.dot(other.amp_);
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(int n, Eigen::MatrixXcd matrix) : n_(n), m_(std::move(matrix)) {
    check_dense_qubits(n, "DenseOperator");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (m_.rows() != dim || m_.cols() != dim) {
        throw std::invalid_argument("DenseOperator: matrix must be 2^n x 2^n");
    }
}

DenseOperator DenseOperator::identity(int n) {
    check_dense_qubits(n, "DenseOperator::identity");
    const Eigen::Index dim = Eigen::Index{1} << n;
    return DenseOperator(n, Eigen::MatrixXcd::Identity(dim, dim));
}

DenseOperator DenseOperator::zero(int n) {
    check_dense_qubits(n, "DenseOperator::zero");
    const Eigen::Index dim = Eigen::Index{1} << n;
    return DenseOperator(n, Eigen::MatrixXcd::Zero(dim, dim));
}

DenseOperator DenseOperator::projector(const StateVector &psi) {
    return DenseOperator(psi.num_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

bool DenseOperator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool DenseOperator::is_unitary(double tol) const {
    const Eigen::MatrixXcd g = m_.adjoint() * m_;
    return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool DenseOperator::is_psd(double tol) const {
    if (!is_hermitian(std::max(tol, kStructureTol))) return false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -tol;
}

DenseOperator DenseOperator::traceless_part() const {
    const double dim = static_cast<double>(m_.rows());
    Eigen::MatrixXcd out = m_;
    out.diagonal().array() -= m_.trace() / dim;
    return DenseOperator(n_, std::move(out));
}

DenseOperator DenseOperator::operator+(const DenseOperator &rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("DenseOperator: qubit count mismatch");
    return DenseOperator(n_, m_ + rhs.m_);
}

DenseOperator DenseOperator::operator-(const DenseOperator &rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("DenseOperator: qubit count mismatch");
    return DenseOperator(n_, m_ - rhs.m_);
}

DenseOperator DenseOperator::operator*(const DenseOperator &rhs) const {
    if (n_ != rhs.n_) throw std::invalid_argument("DenseOperator: qubit count mismatch");
    return DenseOperator(n_, m_ * rhs.m_);
}

DenseOperator DenseOperator::operator*(cplx scalar) const { return DenseOperator(n_, m_ * scalar); }

// ---------------------------------------------------------------------------
// Gate application

StateVector apply_gate(const StateVector &state, const Eigen::MatrixXcd &gate, std::span<const int> targets) {
    const int n = state.num_qubits();
    const int k = static_cast<int>(targets.size());
    if (k == 0 || k > n) throw std::invalid_argument("apply_gate: need 1..n targets");
    const Eigen::Index gdim = Eigen::Index{1} << k;
    if (gate.rows() != gdim || gate.cols() != gdim) {
        throw std::invalid_argument("apply_gate: gate dimension does not match target count");
    }
    uint64_t target_mask = 0;
    for (int t : targets) {
        if (t < 0 || t >= n) throw std::out_of_range("apply_gate: target out of range");
        const uint64_t bit = 1ULL << (n - 1 - t);
        if (target_mask & bit) throw std::invalid_argument("apply_gate: repeated target index");
        target_mask |= bit;
    }

    // offsets[g] = basis-index bits contributed by gate-local index g.
    std::vector<uint64_t> offsets(static_cast<size_t>(gdim), 0);
    for (Eigen::Index g = 0; g < gdim; ++g) {
        uint64_t off = 0;
        for (int j = 0; j < k; ++j) {
            if ((g >> (k - 1 - j)) & 1) off |= 1ULL << (n - 1 - targets[static_cast<size_t>(j)]);
        }
        offsets[static_cast<size_t>(g)] = off;
    }

    const Eigen::VectorXcd &in = state.amplitudes();
    Eigen::VectorXcd out = in;
    Eigen::VectorXcd local(gdim);
    const uint64_t dim = static_cast<uint64_t>(in.size());
    for (uint64_t base = 0; base < dim; ++base) {
        if (base & target_mask) continue;
        for (Eigen::Index g = 0; g < gdim; ++g) local[g] = in[static_cast<Eigen::Index>(base | offsets[static_cast<size_t>(g)])];
        const Eigen::VectorXcd res = gate * local;
        for (Eigen::Index g = 0; g < gdim; ++g) out[static_cast<Eigen::Index>(base | offsets[static_cast<size_t>(g)])] = res[g];
    }
    return StateVector::from_amplitudes(std::move(out), /*normalize=*/false);
}

void apply_1q_inplace(Eigen::VectorXcd &amp, int n, int qubit, const Eigen::Matrix2cd &gate) {
    const int p = n - 1 - qubit;
    const uint64_t bit = 1ULL << p;
    const uint64_t half = static_cast<uint64_t>(amp.size()) >> 1;
    cplx *a = amp.data();
    for (uint64_t j = 0; j < half; ++j) {
        const uint64_t i0 = insert_zero(j, p);
        const uint64_t i1 = i0 | bit;
        const cplx v0 = a[i0];
        const cplx v1 = a[i1];
        a[i0] = gate(0, 0) * v0 + gate(0, 1) * v1;
        a[i1] = gate(1, 0) * v0 + gate(1, 1) * v1;
    }
}

namespace {

template <typename Mat>
void apply_2q_impl(Eigen::VectorXcd &amp, int n, int q0, int q1, const Mat &gate) {
    const int p0 = n - 1 - q0;
    const int p1 = n - 1 - q1;
    const int lo = std::min(p0, p1);
    const int hi = std::max(p0, p1);
    const uint64_t b0 = 1ULL << p0;
    const uint64_t b1 = 1ULL << p1;
    const uint64_t quarter = static_cast<uint64_t>(amp.size()) >> 2;
    using Scalar = typename Mat::Scalar;
    Scalar g[16];
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) g[4 * r + c] = gate(r, c);
    }
    cplx *a = amp.data();
    for (uint64_t j = 0; j < quarter; ++j) {
        const uint64_t base = insert_zero(insert_zero(j, lo), hi);
        const uint64_t idx[4] = {base, base | b1, base | b0, base | b0 | b1};
        const cplx v[4] = {a[idx[0]], a[idx[1]], a[idx[2]], a[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            double re = 0.0, im = 0.0;
            for (int c = 0; c < 4; ++c) {
                // Plain arithmetic; std::complex operator* adds NaN recovery branches.
                if constexpr (std::is_same_v<Scalar, double>) {
                    re += g[4 * r + c] * v[c].real();
                    im += g[4 * r + c] * v[c].imag();
                } else {
                    re += g[4 * r + c].real() * v[c].real() - g[4 * r + c].imag() * v[c].imag();
                    im += g[4 * r + c].real() * v[c].imag() + g[4 * r + c].imag() * v[c].real();
                }
            }
            a[idx[r]] = cplx(re, im);
        }
    }
}

}  // namespace

void apply_2q_inplace(Eigen::VectorXcd &amp, int n, int q0, int q1, const Eigen::Matrix4cd &gate) {
    apply_2q_impl(amp, n, q0, q1, gate);
}

void apply_2q_inplace(Eigen::VectorXcd &amp, int n, int q0, int q1, const Eigen::Matrix4d &gate) {
    apply_2q_impl(amp, n, q0, q1, gate);
}

void apply_cnot_inplace(Eigen::VectorXcd &amp, int n, int control, int target) {
    const uint64_t cb = 1ULL << (n - 1 - control);
    const uint64_t tb = 1ULL << (n - 1 - target);
    const uint64_t dim = static_cast<uint64_t>(amp.size());
    cplx *a = amp.data();
    for (uint64_t i = 0; i < dim; ++i) {
        if ((i & cb) && !(i & tb)) std::swap(a[i], a[i | tb]);
    }
}

// ---------------------------------------------------------------------------
// Measurement and expectations

uint64_t sample_basis_index(const Eigen::VectorXcd &amp, Rng &rng) {
    const double r = uniform01(rng);
    double acc = 0.0;
    const Eigen::Index dim = amp.size();
    for (Eigen::Index i = 0; i < dim; ++i) {
        acc += std::norm(amp[i]);
        if (r < acc) return static_cast<uint64_t>(i);
    }
    // Rounding left r above the accumulated total: return the last outcome
    // that carries probability.
    for (Eigen::Index i = dim - 1; i >= 0; --i) {
        if (std::norm(amp[i]) > 0.0) return static_cast<uint64_t>(i);
    }
    return 0;
}

std::pair<Bitstring, StateVector> measure_standard_basis(const StateVector &state, Rng &rng) {
    const uint64_t idx = sample_basis_index(state.amplitudes(), rng);
    const int n = state.num_qubits();
    return {Bitstring(n, idx), StateVector::basis(n, idx)};
}

double expectation(const StateVector &state, const DenseOperator &observable) {
    if (state.num_qubits() != observable.num_qubits()) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    if (!observable.is_hermitian()) throw std::invalid_argument("expectation: observable is not Hermitian");
    const cplx v = state.amplitudes().dot(observable.matrix() * state.amplitudes());
    return v.real();
}

double expectation(const DenseOperator &rho, const DenseOperator &observable) {
    if (rho.num_qubits() != observable.num_qubits()) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    if (!observable.is_hermitian()) throw std::invalid_argument("expectation: observable is not Hermitian");
    const cplx v = (rho.matrix().cwiseProduct(observable.matrix().transpose())).sum();
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
        throw std::invalid_argument("expectation: tr(rho O) is not real; rho is not Hermitian");
    }
    return v.real();
}

StateVector haar_random_state(int n, Rng &rng) {
    if (n < 1) throw std::invalid_argument("haar_random_state: n must be >= 1");
    check_dense_qubits(n, "haar_random_state");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::VectorXcd amp(dim);
    for (Eigen::Index i = 0; i < dim; ++i) amp[i] = cplx(gauss(rng), gauss(rng));
    return StateVector::from_amplitudes(std::move(amp), /*normalize=*/true);
}

DenseOperator haar_random_unitary(int n, Rng &rng) {
    check_dense_qubits(n, "haar_random_unitary");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = cplx(gauss(rng), gauss(rng));
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < dim; ++c) {
        const cplx d = r(c, c);
        q.col(c) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
    }
    return DenseOperator(n, std::move(q));
}

// ---------------------------------------------------------------------------
// Paulis

void add_pauli_inplace(Eigen::MatrixXcd &m, int n, uint64_t x_mask, uint64_t z_mask, cplx coeff) {
    const uint64_t dim = 1ULL << n;
    const cplx base = coeff * i_power(std::popcount(x_mask & z_mask));
    for (uint64_t b = 0; b < dim; ++b) {
        const cplx v = (std::popcount(b & z_mask) & 1) ? -base : base;
        m(static_cast<Eigen::Index>(b ^ x_mask), static_cast<Eigen::Index>(b)) += v;
    }
}

cplx pauli_coefficient(const Eigen::MatrixXcd &a, int n, uint64_t x_mask, uint64_t z_mask) {
    const uint64_t dim = 1ULL << n;
    cplx acc = 0.0;
    for (uint64_t b = 0; b < dim; ++b) {
        const cplx v = a(static_cast<Eigen::Index>(b ^ x_mask), static_cast<Eigen::Index>(b));
        acc += (std::popcount(b & z_mask) & 1) ? -v : v;
    }
    // P has entry i^{|x&z|} (+/-1); tr(P^dagger A) conjugates that phase.
    return acc * std::conj(i_power(std::popcount(x_mask & z_mask))) / static_cast<double>(dim);
}

DenseOperator pauli_to_dense(const PauliString &p) {
    const int n = p.num_qubits();
    check_dense_qubits(n, "pauli_to_dense");
    DenseOperator out = DenseOperator::zero(n);
    add_pauli_inplace(out.mutable_matrix(), n, p.x_mask(), p.z_mask(), p.phase_factor());
    return out;
}

namespace {

// In-place unnormalized Walsh-Hadamard transform: v(z) <- sum_b (-1)^{|b&z|} v(b).
template <typename T>
void walsh_hadamard(T *v, uint64_t len) {
    for (uint64_t h = 1; h < len; h <<= 1) {
        for (uint64_t i = 0; i < len; i += h << 1) {
            for (uint64_t j = i; j < i + h; ++j) {
                const T a = v[j];
                const T b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

template <typename Vec>
Eigen::MatrixXcd compose_impl(const Vec &coeffs, int n) {
    check_dense_qubits(n, "pauli_compose");
    const uint64_t dim = 1ULL << n;
    if (static_cast<uint64_t>(coeffs.size()) != dim * dim) {
        throw std::invalid_argument("pauli_compose: expected 4^n coefficients");
    }
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<cplx> f(dim);
    for (uint64_t x = 0; x < dim; ++x) {
        for (uint64_t z = 0; z < dim; ++z) {
            f[z] = cplx(coeffs[static_cast<Eigen::Index>((x << n) | z)]) * i_power(std::popcount(x & z));
        }
        walsh_hadamard(f.data(), dim);
        for (uint64_t b = 0; b < dim; ++b) out(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b)) = f[b];
    }
    return out;
}

}  // namespace

Eigen::VectorXcd pauli_decompose(const Eigen::MatrixXcd &a, int n) {
    check_dense_qubits(n, "pauli_decompose");
    const uint64_t dim = 1ULL << n;
    if (static_cast<uint64_t>(a.rows()) != dim || static_cast<uint64_t>(a.cols()) != dim) {
        throw std::invalid_argument("pauli_decompose: matrix must be 2^n x 2^n");
    }
    Eigen::VectorXcd out(static_cast<Eigen::Index>(dim * dim));
    std::vector<cplx> g(dim);
    const double scale = 1.0 / static_cast<double>(dim);
    for (uint64_t x = 0; x < dim; ++x) {
        for (uint64_t b = 0; b < dim; ++b) g[b] = a(static_cast<Eigen::Index>(b ^ x), static_cast<Eigen::Index>(b));
        walsh_hadamard(g.data(), dim);
        for (uint64_t z = 0; z < dim; ++z) {
            out[static_cast<Eigen::Index>((x << n) | z)] = g[z] * std::conj(i_power(std::popcount(x & z))) * scale;
        }
    }
    return out;
}

Eigen::MatrixXcd pauli_compose(const Eigen::VectorXcd &coeffs, int n) { return compose_impl(coeffs, n); }

Eigen::MatrixXcd pauli_compose(const Eigen::VectorXd &coeffs, int n) { return compose_impl(coeffs, n); }

}  // namespace aiso
