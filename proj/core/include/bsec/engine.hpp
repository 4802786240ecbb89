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
 * Noisy trajectory simulation of scheduled native circuits.
 *
 * Each shot runs the circuit once on a fresh ProductState. Before every
 * pulse the phonon walk is advanced (or re-thermalized), the pulse angle is
 * rescaled, and sampled Pauli faults are inserted. An ion is read out as
 * soon as no later unitary touches it; this is exact because all readout is
 * terminal Z measurement and nothing afterwards acts on that ion.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bsec/circuit.hpp"
#include "bsec/code_model.hpp"
#include "bsec/noise.hpp"
#include "bsec/types.hpp"

namespace bsec {

struct FaultEvent {
    std::size_t gate = 0;  // index of the gate the fault follows (or precedes, for idles)
    PauliFault fault;
    std::string source;  // "xx", "idle" or "inject"

    bool operator==(const FaultEvent &) const = default;
};

struct ShotRecord {
    /// Measured bits per named block, in block ion order, after readout flips.
    std::map<std::string, std::vector<std::uint8_t>> bits;
    /// Filled by the decoding layer; empty straight out of the engine.
    std::vector<Syndrome> syndromes;
    std::vector<FaultEvent> fault_log;
    std::vector<std::int64_t> phonon_trace;

    const std::vector<std::uint8_t> &block(std::string_view name) const;

    bool operator==(const ShotRecord &) const = default;
};

/// Counter-based stream derivation: the generator for a shot depends only on
/// (master_seed, salt, shot_index).
struct SeedPolicy {
    std::uint64_t master_seed = 0;
    std::uint64_t salt = 0;

    std::uint64_t stream(std::uint64_t shot_index) const;
    Rng rng_for(std::uint64_t shot_index) const { return Rng(stream(shot_index)); }

    /// Stable 64-bit salt for a label (FNV-1a).
    static std::uint64_t salt_for(std::string_view label);
};

struct RunOptions {
    bool record_faults = false;
    bool record_phonons = false;
    /// Read ions out as soon as they are finished. Forced off when crosstalk
    /// is enabled, since crosstalk touches every ion.
    bool early_measurement = true;
};

/// A deterministic Pauli insertion applied after the first `boundary` gates
/// (boundary 0 acts on the freshly initialized ions).
struct InjectedFault {
    std::size_t boundary = 0;
    std::vector<PauliFault> paulis;
};

/// Every single-location fault: X, Y, Z on each ion at initialization, the
/// three Paulis after each single-qubit rotation and the 15 non-identity
/// two-qubit Paulis after each XX gate.
std::vector<InjectedFault> enumerate_fault_sites(const NativeCircuit &circuit);

/// Circuit-bound simulator; caches the per-gate bookkeeping.
class Simulator {
  public:
    /// Throws std::invalid_argument for unscheduled circuits or when a gate
    /// references an ion without a coupling entry.
    Simulator(NativeCircuit circuit, NoiseParams params, RunOptions options = {});

    const NativeCircuit &circuit() const { return circuit_; }
    const NoiseParams &params() const { return params_; }

    /// One noisy trajectory. `inject` adds a deterministic fault on top.
    ShotRecord run_shot(Rng &rng, const InjectedFault *inject = nullptr) const;

    /// Noiseless run with one injected fault; returns every outcome with its
    /// Born probability instead of sampling.
    std::vector<std::pair<ShotRecord, double>> exact_outcomes(const InjectedFault &inject) const;

  private:
    void validate_injection(const InjectedFault &inject) const;
    ShotRecord assemble(const std::vector<std::uint8_t> &by_ion) const;

    NativeCircuit circuit_;
    NoiseParams params_;
    RunOptions options_;
    std::size_t measure_index_ = 0;
    std::vector<std::vector<std::size_t>> idles_before_;  // idle intervals closed by gate g
    std::vector<std::vector<int>> finished_after_;        // ions whose last unitary is gate g
    int max_ion_ = 0;
};

ShotRecord run_shot(const NativeCircuit &circuit, const NoiseParams &params, Rng &rng,
                    const RunOptions &options = {});

using ShotSink = std::function<void(std::uint64_t shot_index, const ShotRecord &record)>;

/// Runs shots [first_shot, first_shot + shots) and hands records to `sink`
/// strictly in shot order. Workers only change wall time.
void run_monte_carlo(const Simulator &sim, std::uint64_t shots, const SeedPolicy &seeds, unsigned workers,
                     const ShotSink &sink, std::uint64_t first_shot = 0);

/// Decoder verdict for one record: nullopt when rejected, else whether the
/// logical outcome is wrong.
using ErrorPredicate = std::function<std::optional<bool>(const ShotRecord &)>;

/// Probability of an accepted logical error with exactly one injected fault
/// and no other noise.
double inject_fault_run(const NativeCircuit &circuit, const InjectedFault &inject, const ErrorPredicate &is_error);

}  // namespace bsec
