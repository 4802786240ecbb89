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
 * Native trapped-ion circuits: axis rotations in the x-y plane, virtual Z
 * rotations, XX(theta) = exp(-i theta X_i X_j) entanglers and a terminal
 * Z measurement, laid out on labeled ions and scheduled serially.
 */

#pragma once

#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bsec {

enum class GateKind { kR, kRZ, kXX, kMeasureZ, kIdle };

std::string_view to_string(GateKind kind);

struct NativeGate {
    GateKind kind = GateKind::kR;
    std::vector<int> ions;
    double phi = 0.0;    // rotation axis in the x-y plane (kR only)
    double theta = 0.0;  // rotation angle (kR, kRZ, kXX)
    double start_us = 0.0;
    double duration_us = 0.0;
    std::string tag;  // which sub-circuit emitted the gate

    static NativeGate R(int ion, double phi, double theta, std::string tag = {});
    static NativeGate RX(int ion, double theta, std::string tag = {});
    static NativeGate RY(int ion, double theta, std::string tag = {});
    static NativeGate RZ(int ion, double theta, std::string tag = {});
    static NativeGate XX(int ion_a, int ion_b, double theta, std::string tag = {});
    static NativeGate MeasureZ(std::vector<int> ions, std::string tag = "measure");
    static NativeGate Idle(std::vector<int> ions, double duration_us, std::string tag = "idle");

    bool is_unitary() const { return kind == GateKind::kR || kind == GateKind::kRZ || kind == GateKind::kXX; }
    bool touches(int ion) const;
};

/// Gap between two consecutive participations of an ion in the serial schedule.
struct IdleInterval {
    int ion = 0;
    double start_us = 0.0;
    double duration_us = 0.0;
    std::size_t before_gate = 0;  // index of the gate that closes the gap
};

struct GateDurations {
    double sq_segment_us = 13.0;
    int sq_segments = 3;
    double xx_us = 200.0;
    double measure_us = 100.0;

    double single_qubit_us() const { return sq_segment_us * sq_segments; }
    double of(const NativeGate &gate) const;
};

struct NativeCircuit {
    std::string name;
    std::vector<int> ions;  // sorted, unique
    std::vector<NativeGate> gates;
    std::map<std::string, std::vector<int>> blocks;
    std::vector<IdleInterval> idles;
    double total_duration_us = 0.0;
    bool scheduled = false;

    const std::vector<int> &block(std::string_view name) const;
    bool has_block(std::string_view name) const { return blocks.find(std::string(name)) != blocks.end(); }

    /// Appends another circuit's gates, ions and blocks.
    void append(const NativeCircuit &other);
    void add_gate(NativeGate gate);

    /// Throws std::invalid_argument when a gate references an unknown ion or
    /// the serial schedule is inconsistent.
    void validate() const;
};

/// CNOT(control -> target) as one XX(pi/4) wrapped by Y(+-pi/2) and X(-pi/2).
std::vector<NativeGate> build_cnot(int control, int target, std::string tag = "cnot");

/// |0_L>: each row becomes (|+++> + |--->)/sqrt(2).
NativeCircuit build_prep_zero(std::span<const int> block, std::string_view block_name = "data");
/// |+_L>: each column becomes (|000> + |111>)/sqrt(2).
NativeCircuit build_prep_plus(std::span<const int> block, std::string_view block_name = "data");

/// One Shor round: S1 on ancilla_pair[0] with data order (1,4,2,5,3,6), then
/// S2 on ancilla_pair[1] with order (4,7,5,8,6,9).
NativeCircuit build_shor_round(std::span<const int> data, std::span<const int> ancilla_pair,
                               std::string_view round_tag = "shor:r1");

/// Only the S1 half of a Shor round, on a single ancilla.
NativeCircuit build_shor_s1_only(std::span<const int> data, int ancilla, std::string_view round_tag = "shor:r2");

/// Nine sequential CNOTs data[i] -> ancilla[i].
NativeCircuit build_transversal_cnot(std::span<const int> data, std::span<const int> ancilla);

/// Transversal Y(-pi/2): maps the X basis onto the Z basis before readout.
NativeCircuit build_basis_change(std::span<const int> ions);

enum class ExperimentKind {
    kDirectPrep,
    kDirectPrepPlus,
    kShorE1,
    kShorE2,
    kShorE2S1Only,
    kSteanePlus,
    kSteaneZero,
    kSteaneNoCnotPlus,
    kSteaneNoCnotZero,
    kBellZZ,
    kBellXX,
};

std::string_view to_string(ExperimentKind kind);
/// Throws std::invalid_argument for unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);
const std::vector<ExperimentKind> &all_experiment_kinds();

/// Data block ions 1..9, Shor ancillas 10..13, Steane/Bell second block 10..18.
inline constexpr int kDataIons[9] = {1, 2, 3, 4, 5, 6, 7, 8, 9};
inline constexpr int kSecondBlockIons[9] = {10, 11, 12, 13, 14, 15, 16, 17, 18};

/// Full circuit including preparation, gadget, basis change and terminal
/// measurement, scheduled with `durations`.
NativeCircuit build_experiment(ExperimentKind kind, const GateDurations &durations = {});

/// Serial schedule: start times, durations and per-ion idle intervals.
NativeCircuit schedule(NativeCircuit circuit, const GateDurations &durations);

/// One JSON object per gate: kind, ions, phi, angle, start, duration, tag.
void dump_circuit_jsonl(const NativeCircuit &circuit, std::ostream &out);

}  // namespace bsec
