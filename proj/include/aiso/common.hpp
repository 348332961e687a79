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

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aiso {

using cplx = std::complex<double>;

/// Seeded generator used everywhere randomness is consumed.
using Rng = std::mt19937_64;

/// Absolute tolerance for unitarity and Hermiticity checks (max entry deviation).
inline constexpr double kStructureTol = 1e-10;

/// Mixes a master seed with a stream id (splitmix64 finalizer). Used to derive
/// independent per-instance / per-group generators from one master seed.
constexpr uint64_t derive_seed(uint64_t master, uint64_t stream) {
    uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Rng make_rng(uint64_t master, uint64_t stream) {
    return Rng(derive_seed(master, stream));
}

inline double uniform01(Rng &rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

/// Uniform integer in [0, bound) by rejection; unlike std::uniform_int_distribution
/// the draw sequence is the same on every standard library.
inline uint64_t uniform_index(Rng &rng, uint64_t bound) {
    const uint64_t limit = ~0ULL - (~0ULL % bound);
    uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

/// Computational-basis outcome of n qubits. Qubit 0 is the most significant bit
/// of `value`, matching the amplitude index convention of StateVector.
class Bitstring {
  public:
    Bitstring() = default;
    Bitstring(int n, uint64_t value) : n_(n), value_(value) {
        if (n < 0 || n > 63) {
            throw std::invalid_argument("Bitstring: qubit count out of range");
        }
        if (n < 63 && (value >> n) != 0) {
            throw std::invalid_argument("Bitstring: value has bits beyond qubit count");
        }
    }

    static Bitstring parse(std::string_view text) {
        uint64_t v = 0;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("Bitstring: expected only '0' and '1'");
            }
            v = (v << 1) | static_cast<uint64_t>(c == '1');
        }
        return Bitstring(static_cast<int>(text.size()), v);
    }

    int size() const { return n_; }
    uint64_t value() const { return value_; }
    bool bit(int qubit) const { return (value_ >> (n_ - 1 - qubit)) & 1U; }

    std::string to_string() const {
        std::string s(static_cast<size_t>(n_), '0');
        for (int q = 0; q < n_; ++q) {
            if (bit(q)) s[static_cast<size_t>(q)] = '1';
        }
        return s;
    }

    bool operator==(const Bitstring &) const = default;

  private:
    int n_ = 0;
    uint64_t value_ = 0;
};

}  // namespace aiso
