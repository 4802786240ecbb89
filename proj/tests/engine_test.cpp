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

#include "bsec/engine.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <map>
#include <numbers>

#include "bsec/decoders.hpp"

namespace bsec {
namespace {

NativeCircuit scheduled(ExperimentKind kind) { return build_experiment(kind, GateDurations{}); }

TEST(Engine, NoiselessPrepReadsCodeword) {
    const Simulator sim(scheduled(ExperimentKind::kDirectPrep), NoiseParams::noiseless());
    Rng rng(3);
    for (int s = 0; s < 500; ++s) {
        const ShotRecord r = sim.run_shot(rng);
        const std::uint16_t w = data_word(r);
        EXPECT_TRUE(readout_syndrome(w).trivial());
        EXPECT_EQ(decode_z_readout(w), 0);
        EXPECT_TRUE(r.fault_log.empty());
    }
}

TEST(Engine, SameSeedSameShot) {
    const Simulator sim(scheduled(ExperimentKind::kShorE1), NoiseParams::defaults(), RunOptions{true, true, true});
    const SeedPolicy seeds{42, SeedPolicy::salt_for("x")};
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng a = seeds.rng_for(s), b = seeds.rng_for(s);
        EXPECT_EQ(sim.run_shot(a), sim.run_shot(b));
    }
    EXPECT_NE(seeds.stream(0), seeds.stream(1));
    EXPECT_NE(SeedPolicy::salt_for("a"), SeedPolicy::salt_for("b"));
}

TEST(Engine, WorkerCountDoesNotChangeResults) {
    const Simulator sim(scheduled(ExperimentKind::kSteanePlus), NoiseParams::defaults());
    const SeedPolicy seeds{7, 0};
    auto collect = [&](unsigned workers) {
        std::vector<ShotRecord> out;
        run_monte_carlo(sim, 300, seeds, workers, [&](std::uint64_t idx, const ShotRecord &r) {
            EXPECT_EQ(idx, out.size() + 5);
            out.push_back(r);
        }, 5);
        return out;
    };
    const auto one = collect(1);
    EXPECT_EQ(one, collect(3));
    EXPECT_EQ(one, collect(8));
    EXPECT_THROW(run_monte_carlo(sim, 0, seeds, 1, [](std::uint64_t, const ShotRecord &) {}), std::invalid_argument);
}

TEST(Engine, EarlyReadoutIsExact) {
    NoiseParams p = NoiseParams::defaults();
    const NativeCircuit c = scheduled(ExperimentKind::kShorE1);
    const Simulator early(c, p, RunOptions{false, false, true});
    const Simulator late(c, p, RunOptions{false, false, false});
    const SeedPolicy seeds{9, 0};
    std::map<std::string, int> a, b;
    const int shots = 4000;
    run_monte_carlo(early, shots, seeds, 1, [&](std::uint64_t, const ShotRecord &r) {
        a[shor_syndrome(r, 1).label()]++;
    });
    run_monte_carlo(late, shots, seeds, 1, [&](std::uint64_t, const ShotRecord &r) {
        b[shor_syndrome(r, 1).label()]++;
    });
    // Different draw order, same law.
    for (const auto &[label, count] : a) {
        EXPECT_NEAR(count / double(shots), b[label] / double(shots), 0.03) << label;
    }
}

TEST(Engine, HeatingTraceGrowsAndCoolingResets) {
    NoiseParams p = NoiseParams::defaults();
    const NativeCircuit c = scheduled(ExperimentKind::kShorE2);
    const SeedPolicy seeds{1, 0};
    const int shots = 2000;
    NoiseParams cooled = p;
    cooled.cooling_reset = true;
    const Simulator heat(c, p, RunOptions{false, true, true});
    const Simulator cool(c, cooled, RunOptions{false, true, true});
    std::size_t pulses = 0;
    double growth = 0, growth2 = 0, cooled_last = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        Rng r1 = seeds.rng_for(s), r2 = seeds.rng_for(s);
        const ShotRecord h = heat.run_shot(r1);
        const ShotRecord k = cool.run_shot(r2);
        pulses = h.phonon_trace.size();
        const double g = static_cast<double>(h.phonon_trace.back() - h.phonon_trace.front());
        growth += g;
        growth2 += g * g;
        cooled_last += static_cast<double>(k.phonon_trace.back());
    }
    EXPECT_GT(pulses, 100u);
    const double t_end = c.gates[c.gates.size() - 2].start_us;
    const double mean = growth / shots;
    const double se = std::sqrt((growth2 / shots - mean * mean) / shots);
    EXPECT_NEAR(mean, p.n_dot_per_us * t_end, 4 * se);
    EXPECT_NEAR(cooled_last / shots, p.n_bar0, 0.1 * p.n_bar0);
}

TEST(Engine, FaultLogRecordsSources) {
    NoiseParams p = NoiseParams::noiseless();
    p.p_z = PairTable(1.0);
    const Simulator sim(scheduled(ExperimentKind::kDirectPrep), p, RunOptions{true, false, true});
    Rng rng(1);
    const ShotRecord r = sim.run_shot(rng);
    EXPECT_EQ(r.fault_log.size(), 12u);  // six XX gates, two ions each
    for (const auto &e : r.fault_log) {
        EXPECT_EQ(e.source, "xx");
        EXPECT_EQ(e.fault.pauli, Pauli::kZ);
    }
}

TEST(Engine, ExactOutcomesSumToOne) {
    const NativeCircuit c = scheduled(ExperimentKind::kShorE1);
    const Simulator sim(c, NoiseParams::noiseless(), RunOptions{false, false, false});
    const auto sites = enumerate_fault_sites(c);
    EXPECT_GT(sites.size(), 400u);
    const InjectedFault z_on_ancilla{30, {{10, Pauli::kZ}}};
    double total = 0.0;
    for (const auto &[rec, prob] : sim.exact_outcomes(z_on_ancilla)) {
        total += prob;
        EXPECT_EQ(rec.block("data").size(), 9u);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

// Index just past the last gate acting on `ion`.
std::size_t after_last_gate_on(const NativeCircuit &c, int ion) {
    std::size_t b = 0;
    for (std::size_t g = 0; g + 1 < c.gates.size(); ++g) {
        if (c.gates[g].touches(ion)) {
            b = g + 1;
        }
    }
    return b;
}

TEST(Engine, InjectedFaultMatchesSampling) {
    const NativeCircuit c = scheduled(ExperimentKind::kDirectPrep);
    const ErrorPredicate err = [](const ShotRecord &r) -> std::optional<bool> {
        return decode_direct_prep(r).logical_error;
    };
    // A single X after preparation flips one row: always corrected.
    const InjectedFault one_row{after_last_gate_on(c, 5), {{5, Pauli::kX}}};
    EXPECT_NEAR(inject_fault_run(c, one_row, err), 0.0, 1e-12);
    // Z is invisible to the Z readout.
    const InjectedFault z_only{after_last_gate_on(c, 5), {{5, Pauli::kZ}}};
    EXPECT_NEAR(inject_fault_run(c, z_only, err), 0.0, 1e-12);

    const Simulator sim(c, NoiseParams::noiseless());
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng rng(s);
        const ShotRecord r = sim.run_shot(rng, &one_row);
        EXPECT_FALSE(decode_direct_prep(r).logical_error);
        int ones = 0;
        for (auto b : r.block("data")) {
            ones += b;
        }
        EXPECT_EQ(ones % 2, 1) << "one row should carry odd parity";
    }

    const InjectedFault bad{c.gates.size() + 4, {{1, Pauli::kX}}};
    EXPECT_THROW(inject_fault_run(c, bad, err), std::invalid_argument);
    const InjectedFault stranger{1, {{40, Pauli::kX}}};
    EXPECT_THROW(inject_fault_run(c, stranger, err), std::invalid_argument);
    const InjectedFault off_gate{c.gates.size() - 1, {{1, Pauli::kX}}};
    if (!c.gates[c.gates.size() - 2].touches(1)) {
        EXPECT_THROW(inject_fault_run(c, off_gate, err), std::invalid_argument);
    }
}

TEST(Engine, RejectsUnscheduledCircuit) {
    NativeCircuit c = build_experiment(ExperimentKind::kDirectPrep, GateDurations{});
    c.scheduled = false;
    EXPECT_THROW(Simulator(c, NoiseParams::defaults()), std::invalid_argument);
}

}  // namespace
}  // namespace bsec
