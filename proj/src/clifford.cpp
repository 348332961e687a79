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

#include "aiso/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace aiso {

namespace {

constexpr int kKeyBits = 5;  // 16 letter pairs x 2 signs per image

int letter_code(char c) {
    switch (c) {
        case 'X': return 1;
        case 'Y': return 2;
        case 'Z': return 3;
        default: return 0;
    }
}

PauliString image_from_key(uint32_t key) {
    static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
    const uint32_t pair = key >> 1;
    std::string s;
    s.push_back((key & 1) ? '-' : '+');
    s.push_back(kLetters[pair >> 2]);
    s.push_back(kLetters[pair & 3]);
    return PauliString::parse(s);
}

uint32_t image_key(const PauliString &p) {
    const uint32_t pair = static_cast<uint32_t>(4 * letter_code(p.letter(0)) + letter_code(p.letter(1)));
    return pair * 2 + (p.phase() == 2 ? 1U : 0U);
}

uint32_t tableau_key(const CliffordTableau2 &t) {
    uint32_t key = 0;
    for (const PauliString &img : t.images) key = (key << kKeyBits) | image_key(img);
    return key;
}

CliffordTableau2 tableau_from_key(uint32_t key) {
    CliffordTableau2 t;
    for (int g = 3; g >= 0; --g) {
        t.images[static_cast<size_t>(g)] = image_from_key(key & 31U);
        key >>= kKeyBits;
    }
    return t;
}

std::vector<uint32_t> compute_keys() {
    std::vector<uint32_t> keys;
    keys.reserve(kNumClifford2);
    constexpr uint32_t kTotal = 1U << (4 * kKeyBits);
    for (uint32_t key = 0; key < kTotal; ++key) {
        if (tableau_from_key(key).is_valid()) keys.push_back(key);
    }
    return keys;
}

bool keys_look_right(const std::vector<uint32_t> &keys) {
    return keys.size() == static_cast<size_t>(kNumClifford2) && std::is_sorted(keys.begin(), keys.end()) &&
           keys[kIdentityClifford2] == tableau_key(CliffordTableau2::identity());
}

std::vector<uint32_t> load_or_compute_keys() {
    const char *dir = std::getenv("AISO_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return compute_keys();

    const std::filesystem::path path = std::filesystem::path(dir) / "clifford2_keys_v1.bin";
    {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::vector<uint32_t> keys(kNumClifford2);
            in.read(reinterpret_cast<char *>(keys.data()), static_cast<std::streamsize>(keys.size() * sizeof(uint32_t)));
            if (in && keys_look_right(keys)) return keys;
        }
    }
    std::vector<uint32_t> keys = compute_keys();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out) {
        out.write(reinterpret_cast<const char *>(keys.data()), static_cast<std::streamsize>(keys.size() * sizeof(uint32_t)));
    }
    return keys;
}

const std::vector<uint32_t> &canonical_keys() {
    static const std::vector<uint32_t> keys = [] {
        std::vector<uint32_t> k = load_or_compute_keys();
        if (!keys_look_right(k)) throw std::logic_error("clifford2: enumeration produced an unexpected table");
        return k;
    }();
    return keys;
}

}  // namespace

CliffordTableau2 CliffordTableau2::identity() {
    return CliffordTableau2{{PauliString::parse("XI"), PauliString::parse("ZI"), PauliString::parse("IX"),
                             PauliString::parse("IZ")}};
}

bool CliffordTableau2::is_valid() const {
    for (const PauliString &img : images) {
        if (img.num_qubits() != 2 || !img.is_hermitian() || img.is_identity_letters()) return false;
    }
    // X_q and Z_q anticommute; generators on different qubits commute.
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            const bool same_qubit = (a / 2) == (b / 2);
            if (images[static_cast<size_t>(a)].commutes(images[static_cast<size_t>(b)]) == same_qubit) return false;
        }
    }
    return true;
}

const std::vector<CliffordTableau2> &enumerate_clifford2() {
    static const std::vector<CliffordTableau2> all = [] {
        std::vector<CliffordTableau2> out;
        out.reserve(kNumClifford2);
        for (uint32_t key : canonical_keys()) out.push_back(tableau_from_key(key));
        return out;
    }();
    return all;
}

int clifford2_index(const CliffordTableau2 &t) {
    if (!t.is_valid()) throw std::invalid_argument("clifford2_index: invalid tableau");
    const std::vector<uint32_t> &keys = canonical_keys();
    const uint32_t key = tableau_key(t);
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) throw std::logic_error("clifford2_index: valid tableau missing from table");
    return static_cast<int>(it - keys.begin());
}

const CliffordTableau2 &clifford2_from_index(int index) {
    if (index < 0 || index >= kNumClifford2) throw std::out_of_range("clifford2_from_index: index out of range");
    return enumerate_clifford2()[static_cast<size_t>(index)];
}

int sample_clifford2_index(Rng &rng) { return static_cast<int>(uniform_index(rng, kNumClifford2)); }

CliffordTableau2 sample_uniform_clifford2(Rng &rng) { return clifford2_from_index(sample_clifford2_index(rng)); }

PauliString conjugate_pauli(const CliffordTableau2 &t, const PauliString &p) {
    if (p.num_qubits() != 2) throw std::invalid_argument("conjugate_pauli: expected a 2-qubit Pauli");
    // Y = i X Z per qubit, so P = i^{phase + #Y} X0^x0 Z0^z0 X1^x1 Z1^z1.
    const int num_y = std::popcount(p.x_mask() & p.z_mask());
    PauliString out = PauliString::identity(2).with_phase(p.phase() + num_y);
    for (int q = 0; q < 2; ++q) {
        const int bit = 1 - q;
        if ((p.x_mask() >> bit) & 1) out = out * t.images[static_cast<size_t>(2 * q)];
        if ((p.z_mask() >> bit) & 1) out = out * t.images[static_cast<size_t>(2 * q + 1)];
    }
    return out;
}

DenseOperator tableau_to_dense(const CliffordTableau2 &t) {
    const Eigen::Matrix4cd ax0 = pauli_to_dense(t.images[0]).matrix();
    const Eigen::Matrix4cd az0 = pauli_to_dense(t.images[1]).matrix();
    const Eigen::Matrix4cd ax1 = pauli_to_dense(t.images[2]).matrix();
    const Eigen::Matrix4cd az1 = pauli_to_dense(t.images[3]).matrix();
    const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();

    // U|00> spans the joint +1 eigenspace of the Z images (rank-one projector).
    const Eigen::Matrix4cd proj = (id + az0) * (id + az1) / 4.0;
    Eigen::Index best = 0;
    proj.colwise().norm().maxCoeff(&best);
    const Eigen::Vector4cd v0 = proj.col(best).normalized();

    Eigen::Matrix4cd u;
    u.col(0) = v0;
    u.col(1) = ax1 * v0;
    u.col(2) = ax0 * v0;
    u.col(3) = ax0 * (ax1 * v0);

    for (Eigen::Index r = 0; r < 4; ++r) {
        const cplx z = u(r, 0);
        if (std::abs(z) > 1e-12) {
            u *= std::conj(z) / std::abs(z);
            break;
        }
    }
    return DenseOperator(2, Eigen::MatrixXcd(u));
}

const std::vector<Clifford2Entry> &clifford2_tables() {
    static const std::vector<Clifford2Entry> tables = [] {
        const std::vector<CliffordTableau2> &all = enumerate_clifford2();
        std::vector<Clifford2Entry> out(all.size());
        for (size_t i = 0; i < all.size(); ++i) {
            Clifford2Entry &e = out[i];
            e.unitary = tableau_to_dense(all[i]).matrix();
            for (uint32_t c = 0; c < 16; ++c) {
                const PauliString img = conjugate_pauli(all[i], PauliString(2, c >> 2, c & 3));
                const auto c2 = static_cast<uint8_t>((img.x_mask() << 2) | img.z_mask());
                const int8_t s = img.phase() == 0 ? 1 : -1;
                e.fwd_code[c] = c2;
                e.fwd_sign[c] = s;
                e.inv_code[c2] = static_cast<uint8_t>(c);
                e.inv_sign[c2] = s;
            }
        }
        return out;
    }();
    return tables;
}

}  // namespace aiso
