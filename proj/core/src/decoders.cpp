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

#include "bsec/decoders.hpp"

#include <stdexcept>
#include <string>

namespace bsec {

std::uint16_t pack_bits(std::span<const std::uint8_t> bits) {
    if (bits.size() > 16) {
        throw std::invalid_argument("pack_bits: at most 16 bits");
    }
    std::uint16_t w = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] > 1) {
            throw std::invalid_argument("pack_bits: bits must be 0 or 1");
        }
        w |= static_cast<std::uint16_t>(bits[k] << k);
    }
    return w;
}

std::uint16_t data_word(const ShotRecord &record, std::string_view block) {
    const auto &bits = record.block(block);
    if (bits.size() != 9) {
        throw std::invalid_argument("block '" + std::string(block) + "' must hold 9 bits, has " +
                                    std::to_string(bits.size()));
    }
    return pack_bits(bits);
}

Syndrome shor_syndrome(const ShotRecord &record, int round) {
    if (round != 1 && round != 2) {
        throw std::invalid_argument("Shor rounds are 1 or 2");
    }
    const auto &anc = record.block("ancilla");
    const std::size_t base = 2 * static_cast<std::size_t>(round - 1);
    if (anc.size() < base + 2) {
        throw std::invalid_argument("ancilla block too short for round " + std::to_string(round));
    }
    return Syndrome{anc[base] != 0, anc[base + 1] != 0};
}

DecodeOutcome decode_shor_round(const ShotRecord &record, int round, const CorrectionTable &table) {
    DecodeOutcome out;
    const Syndrome s = shor_syndrome(record, round);
    out.syndrome_path.push_back(s);
    out.correction = table.lookup(s);
    const std::uint16_t data = data_word(record) ^ out.correction.x_readout();
    out.logical_error = decode_z_readout(data) != 0;
    return out;
}

DecodeOutcome decode_shor_single_shot(const ShotRecord &record) {
    return decode_shor_round(record, 1, correction_tables().single_shot_round1);
}

DecodeOutcome decode_shor_disturbance(const ShotRecord &record) {
    DecodeOutcome out;
    out.logical_error = decode_z_readout(data_word(record)) != 0;
    return out;
}

bool adaptive_stops(const Syndrome &round1, AdaptiveVariant variant) {
    if (round1.index() == 0) {
        return true;
    }
    return variant == AdaptiveVariant::kII && round1.s1;  // 10 or 11
}

DecodeOutcome decode_shor_adaptive(const ShotRecord &e1, const ShotRecord *e2, AdaptiveVariant variant) {
    const Syndrome s1 = shor_syndrome(e1, 1);
    const auto &tables = correction_tables();
    if (adaptive_stops(s1, variant)) {
        return decode_shor_round(e1, 1,
                                 variant == AdaptiveVariant::kII ? tables.adaptive2_round1 : tables.single_shot_round1);
    }
    if (!e2) {
        throw std::invalid_argument("adaptive decoding needs the two-round record for s1 = " + s1.label());
    }
    DecodeOutcome out = decode_shor_round(*e2, 2, tables.adaptive_round2);
    out.syndrome_path.insert(out.syndrome_path.begin(), s1);
    return out;
}

DecodeOutcome decode_shor_s1only_round2(const ShotRecord &record) {
    const auto &anc = record.block("ancilla");
    if (anc.size() != 3) {
        throw std::invalid_argument("S1-only records carry three ancilla bits");
    }
    DecodeOutcome out;
    out.syndrome_path.push_back(shor_syndrome(record, 1));
    out.syndrome_path.push_back(Syndrome{anc[2] != 0, false});
    out.correction = anc[2] ? PauliMask::X(4) : PauliMask::X(7);
    out.logical_error = decode_z_readout(data_word(record) ^ out.correction.x_readout()) != 0;
    return out;
}

std::string_view to_string(SteaneMode mode) {
    switch (mode) {
        case SteaneMode::kFeedback:
            return "feedback";
        case SteaneMode::kDisturbance:
            return "disturbance";
        case SteaneMode::kPsAncilla:
            return "ps_ancilla";
        case SteaneMode::kPsData:
            return "ps_data";
        case SteaneMode::kPsJoint:
            return "ps_joint";
    }
    return "?";
}

DecodeOutcome decode_steane(const ShotRecord &record, AncillaKind ancilla, SteaneMode mode) {
    const std::uint16_t data = data_word(record, "data");
    const std::uint16_t anc = data_word(record, "ancilla");
    const Syndrome s_anc = readout_syndrome(anc);
    const Syndrome s_data = readout_syndrome(data);
    DecodeOutcome out;
    out.syndrome_path = {s_anc, s_data};

    // The |0_L> ancilla must also read Z_L = +1.
    const bool anc_ok = s_anc.trivial() && (ancilla == AncillaKind::kPlus || decode_z_readout(anc) == 0);
    const bool data_ok = s_data.trivial();
    switch (mode) {
        case SteaneMode::kFeedback:
            out.correction = correction_tables().single_shot_round1.lookup(s_anc);
            break;
        case SteaneMode::kDisturbance:
            break;
        case SteaneMode::kPsAncilla:
            out.accepted = anc_ok;
            break;
        case SteaneMode::kPsData:
            out.accepted = data_ok;
            break;
        case SteaneMode::kPsJoint:
            out.accepted = anc_ok && data_ok;
            break;
    }
    out.logical_error = out.accepted && decode_z_readout(data ^ out.correction.x_readout()) != 0;
    return out;
}

DecodeOutcome decode_bell(const ShotRecord &record, BellBasis basis, bool post_select) {
    const std::uint16_t a = data_word(record, "data");
    const std::uint16_t b = data_word(record, "ancilla");
    DecodeOutcome out;
    int la = 0, lb = 0;
    if (basis == BellBasis::kZZ) {
        out.syndrome_path = {readout_syndrome(a), readout_syndrome(b)};
        la = decode_z_readout(a);
        lb = decode_z_readout(b);
    } else {
        out.syndrome_path = {readout_syndrome_x(a), readout_syndrome_x(b)};
        la = decode_x_readout(a);
        lb = decode_x_readout(b);
    }
    if (post_select) {
        out.accepted = out.syndrome_path[0].trivial() && out.syndrome_path[1].trivial();
    }
    out.logical_error = out.accepted && (la ^ lb) != 0;
    return out;
}

DecodeOutcome decode_direct_prep(const ShotRecord &record, bool x_basis, bool post_select) {
    const std::uint16_t data = data_word(record);
    DecodeOutcome out;
    const Syndrome s = x_basis ? readout_syndrome_x(data) : readout_syndrome(data);
    out.syndrome_path.push_back(s);
    if (post_select) {
        out.accepted = s.trivial();
    }
    const int logical = x_basis ? decode_x_readout(data) : decode_z_readout(data);
    out.logical_error = out.accepted && logical != 0;
    return out;
}

void ShorTally::add(int round_count, const ShotRecord &record) {
    if (round_count != 1 && round_count != 2) {
        throw std::invalid_argument("ShorTally: round count must be 1 or 2");
    }
    const int r = round_count - 1;
    const int s = shor_syndrome(record, 1).index();
    const auto &tables = correction_tables();
    const DecodeOutcome corrected = round_count == 1 ? decode_shor_round(record, 1, tables.single_shot_round1)
                                                     : decode_shor_round(record, 2, tables.adaptive_round2);
    lambda[r][s].add(corrected.logical_error);
    delta[r][s].add(decode_shor_disturbance(record).logical_error);
    ++shots[r];
}

ShorTally &ShorTally::operator+=(const ShorTally &o) {
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 4; ++s) {
            lambda[r][s] += o.lambda[r][s];
            delta[r][s] += o.delta[r][s];
        }
        shots[r] += o.shots[r];
    }
    return *this;
}

ConditionalTable build_conditional_table(const ShorTally &tally) {
    ConditionalTable t;
    for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 4; ++s) {
            t.mu[r][s] = tally.shots[r] > 0 ? estimate_ci(tally.lambda[r][s].n, tally.shots[r])
                                            : EstimateCI::empty_stratum();
            t.lambda[r][s] = tally.lambda[r][s].estimate();
            t.delta[r][s] = tally.delta[r][s].estimate();
        }
    }
    return t;
}

ConditionalTable build_conditional_table(std::span<const ShotRecord> e1, std::span<const ShotRecord> e2) {
    ShorTally tally;
    for (const auto &rec : e1) {
        tally.add(1, rec);
    }
    for (const auto &rec : e2) {
        tally.add(2, rec);
    }
    return build_conditional_table(tally);
}

}  // namespace bsec
