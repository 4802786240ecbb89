// Copyright 2026 The bsec Authors
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
#include <random>
#include <string_view>

namespace bsec {

using Rng = std::mt19937_64;

/// Single-qubit Pauli; bit 0 is the X component, bit 1 the Z component.
enum class Pauli : std::uint8_t { kI = 0, kX = 1, kZ = 2, kY = 3 };

constexpr Pauli operator*(Pauli a, Pauli b) {
    return static_cast<Pauli>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
constexpr bool has_x(Pauli p) { return (static_cast<std::uint8_t>(p) & 1u) != 0; }
constexpr bool has_z(Pauli p) { return (static_cast<std::uint8_t>(p) & 2u) != 0; }

constexpr char to_char(Pauli p) {
    switch (p) {
        case Pauli::kI:
            return 'I';
        case Pauli::kX:
            return 'X';
        case Pauli::kZ:
            return 'Z';
        case Pauli::kY:
            return 'Y';
    }
    return '?';
}

struct PauliFault {
    int ion = 0;
    Pauli pauli = Pauli::kI;

    bool operator==(const PauliFault &) const = default;
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng &rng, double p) { return uniform01(rng) < p; }

}  // namespace bsec
