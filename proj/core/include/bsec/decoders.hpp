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
 * Classical post-processing of measured shots.
 *
 * Every decoder is a pure function of a ShotRecord. The "data" block holds
 * the nine data readouts; for Shor records "ancilla" holds the bare ancilla
 * bits in round order (S1, S2 of round one, then round two); for Steane and
 * Bell records it holds the second nine-qubit block.
 */

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bsec/code_model.hpp"
#include "bsec/engine.hpp"
#include "bsec/stats.hpp"

namespace bsec {

struct DecodeOutcome {
    bool accepted = true;
    bool logical_error = false;  // always false when rejected
    std::vector<Syndrome> syndrome_path;
    PauliMask correction;
};

/// bits[k] -> bit k. Throws std::invalid_argument for more than 16 bits.
std::uint16_t pack_bits(std::span<const std::uint8_t> bits);

/// 9-bit block; throws std::invalid_argument when the block is missing or
/// has the wrong length.
std::uint16_t data_word(const ShotRecord &record, std::string_view block = "data");

/// Shor ancilla syndrome of round 1 or 2.
Syndrome shor_syndrome(const ShotRecord &record, int round);

/// Majority vote after classically applying the correction for the given
/// round's syndrome from `table`.
DecodeOutcome decode_shor_round(const ShotRecord &record, int round, const CorrectionTable &table);

/// Round-one syndrome, immediate correction.
DecodeOutcome decode_shor_single_shot(const ShotRecord &record);

/// Majority vote on the data only; ancilla bits are ignored.
DecodeOutcome decode_shor_disturbance(const ShotRecord &record);

enum class AdaptiveVariant { kI, kII };

/// Adaptive decoding from a one-round record `e1` and a two-round record
/// `e2`. Variant I stops only on s1 = 00; variant II also stops on 10 and 11.
/// Otherwise the round-two syndrome of `e2` decides the correction on `e2`'s
/// data. Throws std::invalid_argument when `e2` is needed but null.
DecodeOutcome decode_shor_adaptive(const ShotRecord &e1, const ShotRecord *e2, AdaptiveVariant variant);

/// True when the variant ends after round one for this syndrome.
bool adaptive_stops(const Syndrome &round1, AdaptiveVariant variant);

/// Round-two path when only S1 is measured again (record from
/// shor_E2_s1only): S1 = 1 points at row two, S1 = 0 at row three.
DecodeOutcome decode_shor_s1only_round2(const ShotRecord &record);

enum class AncillaKind { kPlus, kZero };
enum class SteaneMode { kFeedback, kDisturbance, kPsAncilla, kPsData, kPsJoint };

std::string_view to_string(SteaneMode mode);

DecodeOutcome decode_steane(const ShotRecord &record, AncillaKind ancilla, SteaneMode mode);

enum class BellBasis { kZZ, kXX };

/// Each block decoded on its own (rows for ZZ, columns for XX); an error is a
/// flipped joint parity. With `post_select`, both blocks need trivial
/// syndromes.
DecodeOutcome decode_bell(const ShotRecord &record, BellBasis basis, bool post_select);

/// Majority vote on a freshly prepared block; `x_basis` reads columns.
DecodeOutcome decode_direct_prep(const ShotRecord &record, bool x_basis = false, bool post_select = false);

/// Shor statistics per first-round syndrome for E1 (r = 1) and E2 (r = 2).
struct ShorTally {
    std::array<std::array<Tally, 4>, 2> lambda{};  // errors within each stratum
    std::array<std::array<Tally, 4>, 2> delta{};
    std::array<std::int64_t, 2> shots{};

    /// r = 1 for one-round records, 2 for two-round records.
    void add(int round_count, const ShotRecord &record);
    ShorTally &operator+=(const ShorTally &o);
};

ConditionalTable build_conditional_table(const ShorTally &tally);
ConditionalTable build_conditional_table(std::span<const ShotRecord> e1, std::span<const ShotRecord> e2);

}  // namespace bsec
