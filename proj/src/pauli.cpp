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

#include "aiso/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace aiso {

namespace {

uint64_t full_mask(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

void check_qubits(int n) {
    if (n < 0 || n > PauliString::kMaxQubits) {
        throw std::invalid_argument("PauliString: qubit count out of range");
    }
}

}  // namespace

PauliString::PauliString(int n) : n_(n) { check_qubits(n); }

PauliString::PauliString(int n, uint64_t x_mask, uint64_t z_mask, int phase)
    : n_(n), x_(x_mask), z_(z_mask), phase_(((phase % 4) + 4) % 4) {
    check_qubits(n);
    if (((x_mask | z_mask) & ~full_mask(n)) != 0) {
        throw std::invalid_argument("PauliString: mask has bits beyond qubit count");
    }
}

PauliString PauliString::parse(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        if (text.front() == '-') phase += 2;
        text.remove_prefix(1);
    }
    if (!text.empty() && text.front() == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    const int n = static_cast<int>(text.size());
    check_qubits(n);
    uint64_t x = 0;
    uint64_t z = 0;
    for (int q = 0; q < n; ++q) {
        const uint64_t bit = 1ULL << (n - 1 - q);
        switch (text[static_cast<size_t>(q)]) {
            case 'I': case '_': break;
            case 'X': x |= bit; break;
            case 'Y': x |= bit; z |= bit; break;
            case 'Z': z |= bit; break;
            default: throw std::invalid_argument("PauliString: unknown letter in '" + std::string(text) + "'");
        }
    }
    return PauliString(n, x, z, phase);
}

PauliString PauliString::single(int n, int qubit, char letter) {
    if (qubit < 0 || qubit >= n) {
        throw std::out_of_range("PauliString::single: qubit out of range");
    }
    std::string s(static_cast<size_t>(n), 'I');
    s[static_cast<size_t>(qubit)] = letter;
    return parse(s);
}

cplx PauliString::phase_factor() const {
    static constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPhases[phase_];
}

char PauliString::letter(int qubit) const {
    const int b = n_ - 1 - qubit;
    const bool x = (x_ >> b) & 1U;
    const bool z = (z_ >> b) & 1U;
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

bool PauliString::commutes(const PauliString &other) const {
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

int pauli_product_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
    // Per-qubit letter products: X·Y = iZ, Y·Z = iX, Z·X = iY and the reverses.
    const uint64_t xs = x1 & ~z1;
    const uint64_t ys = x1 & z1;
    const uint64_t zs = ~x1 & z1;
    const uint64_t y2 = x2 & z2;
    const uint64_t x2only = x2 & ~z2;
    const uint64_t z2only = ~x2 & z2;
    int e = 0;
    e += std::popcount(xs & y2) - std::popcount(xs & z2only);
    e += std::popcount(ys & z2only) - std::popcount(ys & x2only);
    e += std::popcount(zs & x2only) - std::popcount(zs & y2);
    return ((e % 4) + 4) % 4;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    if (n_ != rhs.n_) {
        throw std::invalid_argument("PauliString product: qubit count mismatch");
    }
    const int e = pauli_product_phase(x_, z_, rhs.x_, rhs.z_);
    return PauliString(n_, x_ ^ rhs.x_, z_ ^ rhs.z_, phase_ + rhs.phase_ + e);
}

PauliString PauliString::with_phase(int phase) const {
    PauliString out = *this;
    out.phase_ = ((phase % 4) + 4) % 4;
    return out;
}

int PauliString::sign() const {
    if (!is_hermitian()) {
        throw std::logic_error("PauliString::sign: non-Hermitian Pauli has no real sign");
    }
    return phase_ == 0 ? 1 : -1;
}

std::string PauliString::to_string() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[phase_];
    for (int q = 0; q < n_; ++q) s.push_back(letter(q));
    return s;
}

}  // namespace aiso
