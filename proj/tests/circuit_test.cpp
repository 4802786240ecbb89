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

#include "bsec/circuit.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bsec/code_model.hpp"
#include "bsec/engine.hpp"
#include "test_util.hpp"

namespace bsec {
namespace {

using testing::apply_ideal;
using testing::logical_state;

// Columns of the 4x4 unitary, ions {1 (low bit), 2}.
std::array<std::array<Amp, 4>, 4> two_qubit_unitary(const std::vector<NativeGate> &gates) {
    std::array<std::array<Amp, 4>, 4> u{};
    for (int col = 0; col < 4; ++col) {
        StateVector psi(std::vector<int>{1, 2});
        auto a = psi.amplitudes();
        a[0] = 0.0;
        a[col] = 1.0;
        apply_ideal(psi, gates);
        for (int row = 0; row < 4; ++row) {
            u[row][col] = psi.amplitudes()[row];
        }
    }
    return u;
}

TEST(Circuit, CnotIsExactUpToGlobalPhase) {
    const auto u = two_qubit_unitary(build_cnot(1, 2));
    // Control is ion 1 (bit 0): |c t> index = c + 2t.
    const int cnot_image[4] = {0, 3, 2, 1};
    const Amp phase = u[0][0] / std::abs(u[0][0]);
    double worst = 0.0;
    for (int col = 0; col < 4; ++col) {
        for (int row = 0; row < 4; ++row) {
            const Amp want = row == cnot_image[col] ? phase : Amp{0.0};
            worst = std::max(worst, std::abs(u[row][col] - want));
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Circuit, CnotUsesOneEntanglingPulse) {
    const auto gates = build_cnot(3, 7);
    int xx = 0;
    for (const auto &g : gates) {
        if (g.kind == GateKind::kXX) {
            ++xx;
            EXPECT_DOUBLE_EQ(std::abs(g.theta), std::numbers::pi / 4);
        }
    }
    EXPECT_EQ(xx, 1);
}

TEST(Circuit, CnotMakesBellState) {
    StateVector psi(std::vector<int>{1, 2});
    psi.apply_rotation(1, std::numbers::pi / 2, std::numbers::pi / 2);  // |+> on the control
    apply_ideal(psi, build_cnot(1, 2));
    StateVector bell(std::vector<int>{1, 2});
    bell.amplitudes()[0] = 1.0 / std::sqrt(2.0);
    bell.amplitudes()[3] = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(psi.fidelity(bell), 1.0, 1e-12);
}

class PrepFidelity : public ::testing::TestWithParam<bool> {};

TEST_P(PrepFidelity, MatchesAnalyticCodeState) {
    const bool plus = GetParam();
    const std::vector<int> ions(std::begin(kDataIons), std::end(kDataIons));
    const NativeCircuit c = plus ? build_prep_plus(ions) : build_prep_zero(ions);
    StateVector psi(ions);
    apply_ideal(psi, c.gates);
    EXPECT_GE(psi.fidelity(logical_state(ions, plus)), 1.0 - 1e-10);
}

INSTANTIATE_TEST_SUITE_P(ZeroAndPlus, PrepFidelity, ::testing::Bool());

TEST(Circuit, ShorRoundCouplingOrder) {
    const int anc[2] = {10, 12};
    const NativeCircuit c = build_shor_round(std::span<const int>(kDataIons), anc);
    std::vector<int> s1, s2;
    for (const auto &g : c.gates) {
        if (g.kind != GateKind::kXX) {
            continue;
        }
        const int other = g.ions[0] == 10 || g.ions[0] == 12 ? g.ions[1] : g.ions[0];
        const bool first = g.ions[0] == 10 || g.ions[1] == 10;
        (first ? s1 : s2).push_back(other);
    }
    EXPECT_EQ(s1, (std::vector<int>{1, 4, 2, 5, 3, 6}));
    EXPECT_EQ(s2, (std::vector<int>{4, 7, 5, 8, 6, 9}));
}

TEST(Circuit, ShorRoundRejectsWrongAncillaCount) {
    const int three[3] = {10, 11, 12};
    EXPECT_THROW(build_shor_round(std::span<const int>(kDataIons), three), std::invalid_argument);
}

// A Z on the S1 ancilla after its k-th coupling kicks back Z on the data
// qubits coupled so far; that suffix must reduce to weight one.
TEST(Circuit, AncillaFaultSuffixesReduceByGauges) {
    const int orders[2][6] = {{1, 4, 2, 5, 3, 6}, {4, 7, 5, 8, 6, 9}};
    for (const auto &order : orders) {
        for (int k = 0; k <= 6; ++k) {
            PauliMask suffix;
            for (int j = k; j < 6; ++j) {
                suffix = suffix * PauliMask::Z(order[j]);
            }
            EXPECT_LE(gauge_reduce(suffix).weight(), 1) << "k=" << k;
        }
    }
}

TEST(Circuit, TransversalCnotPairsQubits) {
    const NativeCircuit c =
        build_transversal_cnot(std::span<const int>(kDataIons), std::span<const int>(kSecondBlockIons));
    int seen = 0;
    for (const auto &g : c.gates) {
        if (g.kind == GateKind::kXX) {
            EXPECT_EQ(std::abs(g.ions[0] - g.ions[1]), 9);
            ++seen;
        }
    }
    EXPECT_EQ(seen, 9);
    const int short_block[3] = {10, 11, 12};
    EXPECT_THROW(build_transversal_cnot(std::span<const int>(kDataIons), short_block), std::invalid_argument);
}

TEST(Circuit, ScheduleIsSerial) {
    NativeCircuit c;
    c.ions = {1, 2};
    c.add_gate(NativeGate::RX(1, 1.0));
    c.add_gate(NativeGate::XX(1, 2, 0.5));
    c.add_gate(NativeGate::RX(1, 1.0));
    c.add_gate(NativeGate::MeasureZ({1, 2}));
    GateDurations d;
    d.sq_segment_us = 50;
    d.sq_segments = 2;
    d.xx_us = 200;
    d.measure_us = 0;
    const NativeCircuit s = schedule(c, d);
    EXPECT_DOUBLE_EQ(s.gates[1].start_us, 100.0);
    EXPECT_DOUBLE_EQ(s.total_duration_us, 400.0);
    // Ion 2 waits for the final rotation before readout.
    ASSERT_EQ(s.idles.size(), 1u);
    EXPECT_EQ(s.idles[0].ion, 2);
    EXPECT_DOUBLE_EQ(s.idles[0].duration_us, 100.0);
    EXPECT_EQ(s.idles[0].before_gate, 3u);

    d.xx_us = 0;
    EXPECT_THROW(schedule(c, d), std::invalid_argument);
}

TEST(Circuit, DefaultSingleQubitDurationIsThreeSegments) {
    EXPECT_DOUBLE_EQ(GateDurations{}.single_qubit_us(), 39.0);
}

TEST(Circuit, ExperimentLayouts) {
    const NativeCircuit e2 = build_experiment(ExperimentKind::kShorE2);
    EXPECT_EQ(e2.block("ancilla"), (std::vector<int>{10, 12, 11, 13}));
    EXPECT_EQ(e2.ions.size(), 13u);
    const NativeCircuit steane = build_experiment(ExperimentKind::kSteanePlus);
    EXPECT_EQ(steane.ions.size(), 18u);
    EXPECT_EQ(steane.gates.back().kind, GateKind::kMeasureZ);
    for (ExperimentKind kind : all_experiment_kinds()) {
        const NativeCircuit c = build_experiment(kind);
        EXPECT_NO_THROW(c.validate()) << to_string(kind);
        EXPECT_EQ(parse_experiment_kind(to_string(kind)), kind);
    }
    EXPECT_THROW(parse_experiment_kind("shor_E3"), std::invalid_argument);
}

TEST(Circuit, XReadoutAppendsBasisChange) {
    const NativeCircuit xx = build_experiment(ExperimentKind::kBellXX);
    const NativeCircuit zz = build_experiment(ExperimentKind::kBellZZ);
    EXPECT_EQ(xx.gates.size(), zz.gates.size() + 18);
    const NativeGate &last_rot = xx.gates[xx.gates.size() - 2];
    EXPECT_EQ(last_rot.kind, GateKind::kR);
    EXPECT_DOUBLE_EQ(last_rot.theta, -std::numbers::pi / 2);
}

TEST(Circuit, DumpMatchesGolden) {
    std::ostringstream out;
    dump_circuit_jsonl(build_experiment(ExperimentKind::kShorE1), out);
    std::ifstream golden(std::string(BSEC_GOLDEN_DIR) + "/shor_E1.jsonl");
    ASSERT_TRUE(golden) << "missing golden file";
    std::stringstream want;
    want << golden.rdbuf();
    EXPECT_EQ(out.str(), want.str());
}

}  // namespace
}  // namespace bsec
