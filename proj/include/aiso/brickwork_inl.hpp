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

#include <bit>

namespace aiso {

template <typename Visit>
void for_each_stabilizer(const SignedPauli *generators, int n, Visit &&visit) {
    uint64_t x = 0;
    uint64_t z = 0;
    int sign = 1;
    visit(x, z, sign);
    const uint64_t count = 1ULL << n;
    for (uint64_t k = 1; k < count; ++k) {
        // Gray code: step k flips generator number countr_zero(k).
        const int j = std::countr_zero(k);
        const SignedPauli &g = generators[j];
        // Commuting Hermitian letter-form Paulis multiply to a real sign.
        const int e = pauli_product_phase(x, z, g.x, g.z);
        if (e == 2) sign = -sign;
        sign *= g.sign;
        x ^= g.x;
        z ^= g.z;
        visit(x, z, sign);
    }
}

}  // namespace aiso
