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

#include "bsec/code_model.hpp"

#include <stdexcept>
#include <vector>

namespace bsec {

namespace {

std::vector<PauliMask> gauge_generators() {
    std::vector<PauliMask> gens;
    for (int i = 1; i <= 6; ++i) {
        gens.push_back(PauliMask::Z(i) * PauliMask::Z(i + 3));
    }
    for (int i : {1, 2, 4, 5, 7, 8}) {
        gens.push_back(PauliMask::X(i) * PauliMask::X(i + 1));
    }
    return gens;
}

// All 2^12 gauge-group elements (phases dropped).
const std::vector<PauliMask> &gauge_group() {
    static const std::vector<PauliMask> group = [] {
        auto gens = gauge_generators();
        std::vector<PauliMask> out;
        out.reserve(std::size_t{1} << gens.size());
        for (std::uint32_t m = 0; m < (1u << gens.size()); ++m) {
            PauliMask g;
            for (std::size_t k = 0; k < gens.size(); ++k) {
                if ((m >> k) & 1u) {
                    g = g * gens[k];
                }
            }
            out.push_back(g);
        }
        return out;
    }();
    return group;
}

int majority3(std::uint8_t parities) { return std::popcount(static_cast<unsigned>(parities)) >= 2 ? 1 : 0; }

Syndrome from_parities(std::uint8_t p) {
    const bool p0 = p & 1u, p1 = (p >> 1) & 1u, p2 = (p >> 2) & 1u;
    return Syndrome{p0 != p1, p1 != p2};
}

}  // namespace

std::string PauliMask::str() const {
    std::string out;
    for (int q = 1; q <= 9; ++q) {
        const bool has_x = (x >> q) & 1u;
        const bool has_z = (z >> q) & 1u;
        out.push_back(has_x ? (has_z ? 'Y' : 'X') : (has_z ? 'Z' : '_'));
    }
    return out;
}

std::string Syndrome::label() const {
    return std::string{s1 ? '1' : '0', s2 ? '1' : '0'};
}

Syndrome syndrome_of(PauliMask error, bool with_x_generators) {
    Syndrome s{anticommutes(error, kS1), anticommutes(error, kS2)};
    if (with_x_generators) {
        s.x1 = anticommutes(error, kSX1);
        s.x2 = anticommutes(error, kSX2);
    }
    return s;
}

std::uint8_t row_parities(std::uint16_t bits) {
    std::uint8_t out = 0;
    for (int r = 0; r < 3; ++r) {
        out |= static_cast<std::uint8_t>((std::popcount(static_cast<unsigned>((bits >> (3 * r)) & 0x7u)) & 1) << r);
    }
    return out;
}

std::uint8_t column_parities(std::uint16_t bits) {
    std::uint8_t out = 0;
    for (int c = 0; c < 3; ++c) {
        const unsigned col = (bits >> c) & 0x49u;  // bits c, c+3, c+6
        out |= static_cast<std::uint8_t>((std::popcount(col) & 1) << c);
    }
    return out;
}

Syndrome readout_syndrome(std::uint16_t bits) { return from_parities(row_parities(bits)); }

Syndrome readout_syndrome_x(std::uint16_t bits) { return from_parities(column_parities(bits)); }

int decode_z_readout(std::uint16_t bits) { return majority3(row_parities(bits)); }

int decode_x_readout(std::uint16_t bits) { return majority3(column_parities(bits)); }

PauliMask gauge_reduce(PauliMask error) {
    PauliMask best = error;
    int best_weight = error.weight();
    for (const PauliMask &g : gauge_group()) {
        const PauliMask candidate = error * g;
        const int w = candidate.weight();
        if (w < best_weight || (w == best_weight && candidate < best)) {
            best = candidate;
            best_weight = w;
        }
    }
    return best;
}

bool in_gauge_group(PauliMask error) { return gauge_reduce(error).is_identity(); }

std::string to_string(TableVariant v) {
    switch (v) {
        case TableVariant::kSingleShotRound1:
            return "single_shot_round1";
        case TableVariant::kAdaptiveRound2:
            return "adaptive_round2";
        case TableVariant::kAdaptive2Round1:
            return "adaptive2_round1";
    }
    return "unknown";
}

namespace {

CorrectionTable derive_table(TableVariant variant) {
    CorrectionTable table{variant, {}};
    std::array<bool, 4> found{};
    // Identity first, then X1..X9: the lowest qubit wins each syndrome.
    std::vector<PauliMask> candidates{PauliMask{}};
    for (int q = 1; q <= 9; ++q) {
        candidates.push_back(PauliMask::X(q));
    }
    for (const PauliMask &c : candidates) {
        const int idx = syndrome_of(c).index();
        if (!found[idx]) {
            table.map[idx] = c;
            found[idx] = true;
        }
    }
    for (int idx = 0; idx < 4; ++idx) {
        if (!found[idx]) {
            throw std::logic_error("syndrome " + Syndrome::from_index(idx).label() +
                                   " has no weight<=1 X preimage");
        }
    }
    return table;
}

}  // namespace

CorrectionTables build_correction_tables() {
    return CorrectionTables{
        derive_table(TableVariant::kSingleShotRound1),
        derive_table(TableVariant::kAdaptiveRound2),
        derive_table(TableVariant::kAdaptive2Round1),
    };
}

const CorrectionTables &correction_tables() {
    static const CorrectionTables tables = build_correction_tables();
    return tables;
}

}  // namespace bsec
