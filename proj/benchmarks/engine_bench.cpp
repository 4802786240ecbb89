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

#include <benchmark/benchmark.h>

#include <numbers>

#include "bsec/circuit.hpp"
#include "bsec/decoders.hpp"
#include "bsec/engine.hpp"
#include "bsec/noise.hpp"
#include "bsec/statevector.hpp"

namespace bsec {
namespace {

// Shots per second for each headline circuit under the default noise.
void BM_Shot(benchmark::State &state) {
    const auto kind = static_cast<ExperimentKind>(state.range(0));
    const Simulator sim(build_experiment(kind), NoiseParams::defaults());
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.run_shot(rng));
    }
    state.SetLabel(std::string(to_string(kind)));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Shot)
    ->Arg(static_cast<int>(ExperimentKind::kDirectPrep))
    ->Arg(static_cast<int>(ExperimentKind::kShorE1))
    ->Arg(static_cast<int>(ExperimentKind::kShorE2))
    ->Arg(static_cast<int>(ExperimentKind::kSteanePlus))
    ->Arg(static_cast<int>(ExperimentKind::kBellXX));

void BM_ShotNoEarlyReadout(benchmark::State &state) {
    const Simulator sim(build_experiment(ExperimentKind::kSteanePlus), NoiseParams::defaults(),
                        RunOptions{false, false, false});
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.run_shot(rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ShotNoEarlyReadout);

void BM_DenseXX(benchmark::State &state) {
    std::vector<int> ions;
    for (int i = 1; i <= state.range(0); ++i) {
        ions.push_back(i);
    }
    StateVector psi(ions);
    for (auto _ : state) {
        psi.apply_xx(1, static_cast<int>(state.range(0)), std::numbers::pi / 4);
    }
    state.SetBytesProcessed(state.iterations() * (std::int64_t{1} << state.range(0)) * 16);
}
BENCHMARK(BM_DenseXX)->DenseRange(10, 18, 4);

void BM_PhononWalk(benchmark::State &state) {
    Rng rng(3);
    MotionalState m{660, 0.0};
    for (auto _ : state) {
        m = advance_phonons(m, 200.0, 0.18, rng);
        benchmark::DoNotOptimize(m);
    }
}
BENCHMARK(BM_PhononWalk);

void BM_RabiDecay(benchmark::State &state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rabi_decay_f(x));
        x = x > 40.0 ? 0.0 : x + 0.013;
    }
}
BENCHMARK(BM_RabiDecay);

void BM_DecodeShor(benchmark::State &state) {
    const Simulator sim(build_experiment(ExperimentKind::kShorE1), NoiseParams::defaults());
    Rng rng(4);
    std::vector<ShotRecord> shots;
    for (int s = 0; s < 256; ++s) {
        shots.push_back(sim.run_shot(rng));
    }
    std::size_t k = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode_shor_single_shot(shots[k++ & 255]));
    }
}
BENCHMARK(BM_DecodeShor);

}  // namespace
}  // namespace bsec

BENCHMARK_MAIN();
