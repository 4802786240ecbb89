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

/**
 * @file
 * Algebra of the [[9,1,3]] Bacon-Shor subsystem code.
 *
 * Qubits are numbered 1..9 row-major: row r holds {3r+1, 3r+2, 3r+3}.
 * A PauliMask stores qubit q in bit q, so bit 0 is always clear.
 * Measured 9-bit readouts use the shifted convention: qubit q in bit q-1.
 */

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace bsec {

/// Bits 1..9 of a PauliMask.
inline constexpr std::uint16_t kQubitMask = 0x3FE;

/// Phase-free Pauli operator on the nine code qubits.
struct PauliMask {
    std::uint16_t x = 0;
    std::uint16_t z = 0;

    static constexpr PauliMask X(int q) { return {static_cast<std::uint16_t>(1u << q), 0}; }
    static constexpr PauliMask Z(int q) { return {0, static_cast<std::uint16_t>(1u << q)}; }
    static constexpr PauliMask Y(int q) {
        return {static_cast<std::uint16_t>(1u << q), static_cast<std::uint16_t>(1u << q)};
    }
    /// X on every qubit of a 9-bit readout pattern.
    static constexpr PauliMask from_readout(std::uint16_t bits) {
        return {static_cast<std::uint16_t>((bits << 1) & kQubitMask), 0};
    }

    constexpr PauliMask operator*(PauliMask other) const {
        return {static_cast<std::uint16_t>(x ^ other.x), static_cast<std::uint16_t>(z ^ other.z)};
    }
    constexpr int weight() const { return std::popcount(static_cast<unsigned>(x | z)); }
    constexpr bool is_identity() const { return x == 0 && z == 0; }
    constexpr bool valid() const { return ((x | z) & ~kQubitMask) == 0; }
    /// X support as a 9-bit readout flip pattern.
    constexpr std::uint16_t x_readout() const { return static_cast<std::uint16_t>(x >> 1); }

    constexpr auto operator<=>(const PauliMask &) const = default;

    std::string str() const;
};

/// Z-stabilizer generators S1 = Z1..Z6 and S2 = Z4..Z9, and the two X generators.
inline constexpr PauliMask kS1{0, 0x07E};
inline constexpr PauliMask kS2{0, 0x3F0};
inline constexpr PauliMask kSX1{0x1B6, 0};  // X1X2X4X5X7X8
inline constexpr PauliMask kSX2{0x36C, 0};  // X2X3X5X6X8X9

/// Stabilizer flips. Bit order is fixed as (s1, s2); the X-type bits are
/// only populated when requested.
struct Syndrome {
    bool s1 = false;
    bool s2 = false;
    std::optional<bool> x1;
    std::optional<bool> x2;

    constexpr bool trivial() const { return !s1 && !s2 && !x1.value_or(false) && !x2.value_or(false); }
    /// Index into the Z-syndrome strata: s1 + 2*s2.
    constexpr int index() const { return (s1 ? 1 : 0) | (s2 ? 2 : 0); }
    /// Two-character label "s1s2".
    std::string label() const;

    static constexpr Syndrome from_index(int i) { return Syndrome{(i & 1) != 0, (i & 2) != 0}; }

    constexpr bool operator==(const Syndrome &) const = default;
};

/// Strata in the conventional reporting order 00, 10, 11, 01.
inline constexpr std::array<int, 4> kStrataOrder = {0, 1, 3, 2};

/// Parity of anticommutation of `a` with `b`.
constexpr bool anticommutes(PauliMask a, PauliMask b) {
    return (std::popcount(static_cast<unsigned>((a.x & b.z) ^ (a.z & b.x))) & 1) != 0;
}

Syndrome syndrome_of(PauliMask error, bool with_x_generators = false);

/// Syndrome of a Z-basis readout: row-parity differences.
Syndrome readout_syndrome(std::uint16_t bits);

/// Syndrome of an X-basis readout: column-parity differences.
Syndrome readout_syndrome_x(std::uint16_t bits);

/// Parities of rows 0..2 packed into bits 0..2.
std::uint8_t row_parities(std::uint16_t bits);
std::uint8_t column_parities(std::uint16_t bits);

/// Majority vote over row parities Z_{3i+1}Z_{3i+2}Z_{3i+3}.
int decode_z_readout(std::uint16_t bits);
/// Majority vote over column parities X_{1+j}X_{4+j}X_{7+j}.
int decode_x_readout(std::uint16_t bits);

/// Minimum-weight representative of the coset error * G, where G is the
/// gauge group (which contains the stabilizer group). Ties broken by the
/// smallest (x, z) pair.
PauliMask gauge_reduce(PauliMask error);

/// True when `error` is a member of the gauge group.
bool in_gauge_group(PauliMask error);

enum class TableVariant { kSingleShotRound1, kAdaptiveRound2, kAdaptive2Round1 };

std::string to_string(TableVariant v);

struct CorrectionTable {
    TableVariant variant = TableVariant::kSingleShotRound1;
    std::array<PauliMask, 4> map{};  // indexed by Syndrome::index()

    PauliMask lookup(const Syndrome &s) const { return map[s.index()]; }
};

struct CorrectionTables {
    CorrectionTable single_shot_round1;
    CorrectionTable adaptive_round2;
    CorrectionTable adaptive2_round1;
};

/// Derives every table by searching weight<=1 X preimages of each syndrome.
/// Throws std::logic_error if some syndrome has no such preimage.
CorrectionTables build_correction_tables();

/// Process-wide tables built once.
const CorrectionTables &correction_tables();

}  // namespace bsec
