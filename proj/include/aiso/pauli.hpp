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

#include "aiso/common.hpp"

namespace aiso {

/// An n-qubit Pauli operator  i^phase * (L_0 ⊗ L_1 ⊗ ... ⊗ L_{n-1})  with letters
/// L_q ∈ {I, X, Y, Z}. Letters are stored as X/Z bit masks where qubit q lives at
/// bit (n - 1 - q), the same position it has in a basis-state index.
///
/// Y is a letter of its own (not i·XZ), so a Hermitian Pauli always has phase 0 or 2.
class PauliString {
  public:
    static constexpr int kMaxQubits = 32;

    PauliString() = default;
    explicit PauliString(int n);
    PauliString(int n, uint64_t x_mask, uint64_t z_mask, int phase = 0);

    /// Parses "XIZ", "-XY", "+iZ", "-iYY". Qubit 0 is the leftmost letter.
    static PauliString parse(std::string_view text);
    static PauliString identity(int n) { return PauliString(n); }
    /// Single-letter Pauli on `qubit`; letter ∈ {'I','X','Y','Z'}.
    static PauliString single(int n, int qubit, char letter);

    int num_qubits() const { return n_; }
    uint64_t x_mask() const { return x_; }
    uint64_t z_mask() const { return z_; }
    /// Exponent k of the global factor i^k, in [0, 4).
    int phase() const { return phase_; }
    /// Global factor as a complex number.
    cplx phase_factor() const;

    char letter(int qubit) const;
    /// Support mask: bit set where the letter is not I.
    uint64_t pattern() const { return x_ | z_; }
    int weight() const;
    bool is_identity_letters() const { return (x_ | z_) == 0; }
    /// Only I and Z letters.
    bool is_diagonal() const { return x_ == 0; }
    bool is_hermitian() const { return (phase_ & 1) == 0; }
    bool commutes(const PauliString &other) const;

    PauliString operator*(const PauliString &rhs) const;
    PauliString operator-() const { return with_phase(phase_ + 2); }
    PauliString with_phase(int phase) const;

    /// Sign of a Hermitian Pauli: +1 or -1.
    int sign() const;

    std::string to_string() const;

    bool operator==(const PauliString &) const = default;

  private:
    int n_ = 0;
    uint64_t x_ = 0;
    uint64_t z_ = 0;
    int phase_ = 0;
};

/// Exponent (mod 4) of the factor i^e produced when multiplying letter strings
/// (x1, z1) · (x2, z2), ignoring the operands' own phases.
int pauli_product_phase(uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2);

}  // namespace aiso
