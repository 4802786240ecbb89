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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace bsec {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kQuarterPi = std::numbers::pi / 4;

void require_size(std::span<const int> ions, std::size_t n, std::string_view what) {
    if (ions.size() != n) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " ions, got " +
                                    std::to_string(ions.size()));
    }
}

void add_ions(std::vector<int> &dst, std::span<const int> src) {
    dst.insert(dst.end(), src.begin(), src.end());
    std::sort(dst.begin(), dst.end());
    dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
}

}  // namespace

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::kR:
            return "R";
        case GateKind::kRZ:
            return "RZ";
        case GateKind::kXX:
            return "XX";
        case GateKind::kMeasureZ:
            return "MeasureZ";
        case GateKind::kIdle:
            return "Idle";
    }
    return "?";
}

NativeGate NativeGate::R(int ion, double phi, double theta, std::string tag) {
    return NativeGate{GateKind::kR, {ion}, phi, theta, 0.0, 0.0, std::move(tag)};
}
NativeGate NativeGate::RX(int ion, double theta, std::string tag) { return R(ion, 0.0, theta, std::move(tag)); }
NativeGate NativeGate::RY(int ion, double theta, std::string tag) { return R(ion, kHalfPi, theta, std::move(tag)); }
NativeGate NativeGate::RZ(int ion, double theta, std::string tag) {
    return NativeGate{GateKind::kRZ, {ion}, 0.0, theta, 0.0, 0.0, std::move(tag)};
}
NativeGate NativeGate::XX(int ion_a, int ion_b, double theta, std::string tag) {
    if (ion_a == ion_b) {
        throw std::invalid_argument("XX needs two distinct ions");
    }
    return NativeGate{GateKind::kXX, {ion_a, ion_b}, 0.0, theta, 0.0, 0.0, std::move(tag)};
}
NativeGate NativeGate::MeasureZ(std::vector<int> ions, std::string tag) {
    return NativeGate{GateKind::kMeasureZ, std::move(ions), 0.0, 0.0, 0.0, 0.0, std::move(tag)};
}
NativeGate NativeGate::Idle(std::vector<int> ions, double duration_us, std::string tag) {
    return NativeGate{GateKind::kIdle, std::move(ions), 0.0, 0.0, 0.0, duration_us, std::move(tag)};
}

bool NativeGate::touches(int ion) const { return std::find(ions.begin(), ions.end(), ion) != ions.end(); }

double GateDurations::of(const NativeGate &gate) const {
    switch (gate.kind) {
        case GateKind::kR:
            return single_qubit_us();
        case GateKind::kRZ:
            return 0.0;  // virtual phase update
        case GateKind::kXX:
            return xx_us;
        case GateKind::kMeasureZ:
            return measure_us;
        case GateKind::kIdle:
            return gate.duration_us;
    }
    return 0.0;
}

const std::vector<int> &NativeCircuit::block(std::string_view block_name) const {
    auto it = blocks.find(std::string(block_name));
    if (it == blocks.end()) {
        throw std::out_of_range("circuit " + name + " has no block '" + std::string(block_name) + "'");
    }
    return it->second;
}

void NativeCircuit::append(const NativeCircuit &other) {
    add_ions(ions, other.ions);
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
    for (const auto &[k, v] : other.blocks) {
        blocks.emplace(k, v);
    }
    scheduled = false;
}

void NativeCircuit::add_gate(NativeGate gate) {
    add_ions(ions, gate.ions);
    gates.push_back(std::move(gate));
    scheduled = false;
}

void NativeCircuit::validate() const {
    double t = 0.0;
    for (const auto &g : gates) {
        for (int ion : g.ions) {
            if (!std::binary_search(ions.begin(), ions.end(), ion)) {
                throw std::invalid_argument("gate " + g.tag + " references ion " + std::to_string(ion) +
                                            " outside the layout");
            }
        }
        if (scheduled) {
            if (g.start_us + 1e-9 < t) {
                throw std::invalid_argument("gate " + g.tag + " overlaps its predecessor");
            }
            t = g.start_us + g.duration_us;
        }
    }
}

std::vector<NativeGate> build_cnot(int control, int target, std::string tag) {
    if (control == target) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
    return {
        NativeGate::RY(control, kHalfPi, tag),
        NativeGate::XX(control, target, kQuarterPi, tag),
        NativeGate::RX(control, -kHalfPi, tag),
        NativeGate::RX(target, -kHalfPi, tag),
        NativeGate::RY(control, -kHalfPi, tag),
    };
}

NativeCircuit build_prep_zero(std::span<const int> block, std::string_view block_name) {
    require_size(block, 9, "build_prep_zero");
    NativeCircuit c;
    c.name = "prep_zero";
    add_ions(c.ions, block);
    c.blocks.emplace(std::string(block_name), std::vector<int>(block.begin(), block.end()));
    for (int r = 0; r < 3; ++r) {
        const int first = block[3 * r], mid = block[3 * r + 1], last = block[3 * r + 2];
        const std::string tag = "prep0:" + std::string(block_name) + ":row" + std::to_string(r + 1);
        c.add_gate(NativeGate::RX(first, kHalfPi, tag));
        c.add_gate(NativeGate::RX(last, -kHalfPi, tag));
        c.add_gate(NativeGate::XX(mid, first, kQuarterPi, tag));
        c.add_gate(NativeGate::XX(mid, last, kQuarterPi, tag));
        c.add_gate(NativeGate::RY(first, -kHalfPi, tag));
        c.add_gate(NativeGate::RY(last, kHalfPi, tag));
    }
    return c;
}

NativeCircuit build_prep_plus(std::span<const int> block, std::string_view block_name) {
    require_size(block, 9, "build_prep_plus");
    NativeCircuit c;
    c.name = "prep_plus";
    add_ions(c.ions, block);
    c.blocks.emplace(std::string(block_name), std::vector<int>(block.begin(), block.end()));
    for (int col = 0; col < 3; ++col) {
        const int first = block[col], mid = block[col + 3], last = block[col + 6];
        const std::string tag = "prep+:" + std::string(block_name) + ":col" + std::to_string(col + 1);
        c.add_gate(NativeGate::XX(mid, first, kQuarterPi, tag));
        c.add_gate(NativeGate::XX(mid, last, kQuarterPi, tag));
        c.add_gate(NativeGate::RX(first, -kHalfPi, tag));
        c.add_gate(NativeGate::RY(mid, -kHalfPi, tag));
        c.add_gate(NativeGate::RX(last, -kHalfPi, tag));
    }
    return c;
}

namespace {

// Coupling orders follow the Z gauges Z_i Z_{i+3}, so a fault on the
// ancilla leaves at most one data error up to gauges.
constexpr int kS1Order[6] = {1, 4, 2, 5, 3, 6};
constexpr int kS2Order[6] = {4, 7, 5, 8, 6, 9};

void add_stabilizer_measurement(NativeCircuit &c, std::span<const int> data, const int (&order)[6], int ancilla,
                                const std::string &tag) {
    for (int q : order) {
        for (auto &g : build_cnot(data[q - 1], ancilla, tag)) {
            c.add_gate(std::move(g));
        }
    }
}

}  // namespace

NativeCircuit build_shor_round(std::span<const int> data, std::span<const int> ancilla_pair,
                               std::string_view round_tag) {
    require_size(data, 9, "build_shor_round data");
    require_size(ancilla_pair, 2, "build_shor_round ancillas");
    NativeCircuit c;
    c.name = "shor_round";
    add_ions(c.ions, data);
    add_ions(c.ions, ancilla_pair);
    add_stabilizer_measurement(c, data, kS1Order, ancilla_pair[0], std::string(round_tag) + ":S1");
    add_stabilizer_measurement(c, data, kS2Order, ancilla_pair[1], std::string(round_tag) + ":S2");
    return c;
}

NativeCircuit build_shor_s1_only(std::span<const int> data, int ancilla, std::string_view round_tag) {
    require_size(data, 9, "build_shor_s1_only data");
    NativeCircuit c;
    c.name = "shor_s1";
    add_ions(c.ions, data);
    c.ions.push_back(ancilla);
    std::sort(c.ions.begin(), c.ions.end());
    add_stabilizer_measurement(c, data, kS1Order, ancilla, std::string(round_tag) + ":S1");
    return c;
}

NativeCircuit build_transversal_cnot(std::span<const int> data, std::span<const int> ancilla) {
    if (data.size() != ancilla.size()) {
        throw std::invalid_argument("build_transversal_cnot: block size mismatch");
    }
    require_size(data, 9, "build_transversal_cnot");
    NativeCircuit c;
    c.name = "transversal_cnot";
    add_ions(c.ions, data);
    add_ions(c.ions, ancilla);
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (auto &g : build_cnot(data[i], ancilla[i], "tcnot:" + std::to_string(i + 1))) {
            c.add_gate(std::move(g));
        }
    }
    return c;
}

NativeCircuit build_basis_change(std::span<const int> ions) {
    NativeCircuit c;
    c.name = "basis_change";
    for (int ion : ions) {
        c.add_gate(NativeGate::RY(ion, -kHalfPi, "basis"));
    }
    return c;
}

namespace {

struct KindName {
    ExperimentKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::kDirectPrep, "direct_prep"},
    {ExperimentKind::kDirectPrepPlus, "direct_prep_plus"},
    {ExperimentKind::kShorE1, "shor_E1"},
    {ExperimentKind::kShorE2, "shor_E2"},
    {ExperimentKind::kShorE2S1Only, "shor_E2_s1only"},
    {ExperimentKind::kSteanePlus, "steane_plus"},
    {ExperimentKind::kSteaneZero, "steane_zero"},
    {ExperimentKind::kSteaneNoCnotPlus, "steane_no_cnot_plus"},
    {ExperimentKind::kSteaneNoCnotZero, "steane_no_cnot_zero"},
    {ExperimentKind::kBellZZ, "bell_zz"},
    {ExperimentKind::kBellXX, "bell_xx"},
};

}  // namespace

std::string_view to_string(ExperimentKind kind) {
    for (const auto &kn : kKindNames) {
        if (kn.kind == kind) {
            return kn.name;
        }
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (const auto &kn : kKindNames) {
        if (kn.name == name) {
            return kn.kind;
        }
    }
    throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

const std::vector<ExperimentKind> &all_experiment_kinds() {
    static const std::vector<ExperimentKind> kinds = [] {
        std::vector<ExperimentKind> out;
        for (const auto &kn : kKindNames) {
            out.push_back(kn.kind);
        }
        return out;
    }();
    return kinds;
}

NativeCircuit build_experiment(ExperimentKind kind, const GateDurations &durations) {
    const std::span<const int> data(kDataIons);
    const std::span<const int> second(kSecondBlockIons);
    NativeCircuit c;
    c.name = std::string(to_string(kind));
    std::vector<int> readout_basis_change;

    switch (kind) {
        case ExperimentKind::kDirectPrep:
            c.append(build_prep_zero(data));
            break;
        case ExperimentKind::kDirectPrepPlus:
            c.append(build_prep_plus(data));
            readout_basis_change.assign(data.begin(), data.end());
            break;
        case ExperimentKind::kShorE1: {
            const int anc[2] = {10, 12};
            c.append(build_prep_zero(data));
            c.append(build_shor_round(data, anc, "shor:r1"));
            c.blocks["ancilla"] = {10, 12};
            break;
        }
        case ExperimentKind::kShorE2: {
            // Round two uses fresh ancillas: there is no mid-circuit reset.
            const int r1[2] = {10, 12};
            const int r2[2] = {11, 13};
            c.append(build_prep_zero(data));
            c.append(build_shor_round(data, r1, "shor:r1"));
            c.append(build_shor_round(data, r2, "shor:r2"));
            c.blocks["ancilla"] = {10, 12, 11, 13};
            break;
        }
        case ExperimentKind::kShorE2S1Only: {
            const int r1[2] = {10, 12};
            c.append(build_prep_zero(data));
            c.append(build_shor_round(data, r1, "shor:r1"));
            c.append(build_shor_s1_only(data, 11, "shor:r2"));
            c.blocks["ancilla"] = {10, 12, 11};
            break;
        }
        case ExperimentKind::kSteanePlus:
        case ExperimentKind::kSteaneNoCnotPlus:
            c.append(build_prep_zero(data, "data"));
            c.append(build_prep_plus(second, "ancilla"));
            if (kind == ExperimentKind::kSteanePlus) {
                c.append(build_transversal_cnot(data, second));
            }
            break;
        case ExperimentKind::kSteaneZero:
        case ExperimentKind::kSteaneNoCnotZero:
            c.append(build_prep_zero(data, "data"));
            c.append(build_prep_zero(second, "ancilla"));
            if (kind == ExperimentKind::kSteaneZero) {
                c.append(build_transversal_cnot(data, second));
            }
            break;
        case ExperimentKind::kBellZZ:
        case ExperimentKind::kBellXX:
            c.append(build_prep_plus(data, "data"));
            c.append(build_prep_zero(second, "ancilla"));
            if (kind == ExperimentKind::kBellZZ) {
                c.append(build_transversal_cnot(data, second));
                break;
            }
            // Each pair is rotated for readout as soon as its CNOT is done,
            // so the simulator can measure it out before the next pair.
            for (std::size_t i = 0; i < data.size(); ++i) {
                for (auto &g : build_cnot(data[i], second[i], "tcnot:" + std::to_string(i + 1))) {
                    c.add_gate(std::move(g));
                }
                const int pair[2] = {data[i], second[i]};
                c.append(build_basis_change(pair));
            }
            break;
    }
    c.blocks["data"] = std::vector<int>(data.begin(), data.end());
    if (!readout_basis_change.empty()) {
        c.append(build_basis_change(readout_basis_change));
    }
    c.name = std::string(to_string(kind));
    c.add_gate(NativeGate::MeasureZ(c.ions));
    return schedule(std::move(c), durations);
}

NativeCircuit schedule(NativeCircuit circuit, const GateDurations &durations) {
    if (durations.sq_segment_us <= 0 || durations.sq_segments <= 0 || durations.xx_us <= 0 ||
        durations.measure_us < 0) {
        throw std::invalid_argument("gate durations must be positive");
    }
    circuit.idles.clear();
    std::unordered_map<int, double> last_end;
    double t = 0.0;
    for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
        NativeGate &g = circuit.gates[gi];
        g.start_us = t;
        g.duration_us = durations.of(g);
        if (g.kind != GateKind::kIdle) {
            for (int ion : g.ions) {
                auto it = last_end.find(ion);
                if (it != last_end.end() && g.start_us > it->second) {
                    circuit.idles.push_back(IdleInterval{ion, it->second, g.start_us - it->second, gi});
                }
                last_end[ion] = g.start_us + g.duration_us;
            }
        }
        t += g.duration_us;
    }
    circuit.total_duration_us = t;
    circuit.scheduled = true;
    circuit.validate();
    return circuit;
}

void dump_circuit_jsonl(const NativeCircuit &circuit, std::ostream &out) {
    for (const auto &g : circuit.gates) {
        nlohmann::ordered_json j;
        j["kind"] = to_string(g.kind);
        j["ions"] = g.ions;
        j["phi"] = g.phi;
        j["angle"] = g.theta;
        j["start"] = g.start_us;
        j["duration"] = g.duration_us;
        j["tag"] = g.tag;
        out << j.dump() << '\n';
    }
}

}  // namespace bsec
