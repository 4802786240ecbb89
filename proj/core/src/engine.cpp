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

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "bsec/statevector.hpp"

namespace bsec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr Pauli kPaulis[3] = {Pauli::kX, Pauli::kY, Pauli::kZ};

}  // namespace

const std::vector<std::uint8_t> &ShotRecord::block(std::string_view name) const {
    auto it = bits.find(std::string(name));
    if (it == bits.end()) {
        throw std::invalid_argument("shot record has no block '" + std::string(name) + "'");
    }
    return it->second;
}

std::uint64_t SeedPolicy::stream(std::uint64_t shot_index) const {
    return splitmix64(splitmix64(master_seed ^ splitmix64(salt)) + shot_index);
}

std::uint64_t SeedPolicy::salt_for(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::vector<InjectedFault> enumerate_fault_sites(const NativeCircuit &circuit) {
    std::vector<InjectedFault> sites;
    for (int ion : circuit.ions) {
        for (Pauli p : kPaulis) {
            sites.push_back({0, {{ion, p}}});
        }
    }
    for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
        const NativeGate &gate = circuit.gates[g];
        if (gate.kind == GateKind::kR || gate.kind == GateKind::kRZ) {
            for (Pauli p : kPaulis) {
                sites.push_back({g + 1, {{gate.ions[0], p}}});
            }
        } else if (gate.kind == GateKind::kXX) {
            for (int a = 0; a < 4; ++a) {
                for (int b = 0; b < 4; ++b) {
                    if (a == 0 && b == 0) {
                        continue;
                    }
                    InjectedFault f{g + 1, {}};
                    if (a) {
                        f.paulis.push_back({gate.ions[0], static_cast<Pauli>(a)});
                    }
                    if (b) {
                        f.paulis.push_back({gate.ions[1], static_cast<Pauli>(b)});
                    }
                    sites.push_back(std::move(f));
                }
            }
        }
    }
    return sites;
}

Simulator::Simulator(NativeCircuit circuit, NoiseParams params, RunOptions options)
    : circuit_(std::move(circuit)), params_(std::move(params)), options_(options) {
    if (!circuit_.scheduled) {
        throw std::invalid_argument("Simulator needs a scheduled circuit");
    }
    params_.validate();
    if (params_.crosstalk.enabled) {
        options_.early_measurement = false;
    }
    measure_index_ = circuit_.gates.size();
    for (std::size_t g = 0; g < circuit_.gates.size(); ++g) {
        if (circuit_.gates[g].kind == GateKind::kMeasureZ) {
            if (g + 1 != circuit_.gates.size()) {
                throw std::invalid_argument("measurement must be the final gate");
            }
            measure_index_ = g;
        }
    }
    for (int ion : circuit_.ions) {
        max_ion_ = std::max(max_ion_, ion);
    }
    idles_before_.assign(circuit_.gates.size() + 1, {});
    for (std::size_t k = 0; k < circuit_.idles.size(); ++k) {
        idles_before_[circuit_.idles[k].before_gate].push_back(k);
    }
    std::vector<std::ptrdiff_t> last(max_ion_ + 1, -1);
    for (std::size_t g = 0; g < measure_index_; ++g) {
        const NativeGate &gate = circuit_.gates[g];
        if (gate.is_unitary()) {
            for (int ion : gate.ions) {
                last[ion] = static_cast<std::ptrdiff_t>(g);
            }
        }
        if (gate.kind == GateKind::kR) {
            params_.u_of(gate.ions[0]);
        } else if (gate.kind == GateKind::kXX) {
            params_.u_of(gate.ions[0]);
            params_.u_of(gate.ions[1]);
            params_.p_z.at(gate.ions[0], gate.ions[1]);
            params_.p_x.at(gate.ions[0], gate.ions[1]);
        }
    }
    finished_after_.assign(circuit_.gates.size(), {});
    if (options_.early_measurement) {
        for (int ion : circuit_.ions) {
            if (last[ion] >= 0) {
                finished_after_[last[ion]].push_back(ion);
            }
        }
    }
}

void Simulator::validate_injection(const InjectedFault &inject) const {
    if (inject.boundary > measure_index_) {
        throw std::invalid_argument("fault boundary " + std::to_string(inject.boundary) + " lies past the readout");
    }
    if (inject.paulis.size() > 2) {
        throw std::invalid_argument("injected faults act on at most two ions");
    }
    for (const auto &f : inject.paulis) {
        const bool known = std::binary_search(circuit_.ions.begin(), circuit_.ions.end(), f.ion);
        const bool on_gate = inject.boundary == 0 || circuit_.gates[inject.boundary - 1].touches(f.ion);
        if (!known || !on_gate) {
            throw std::invalid_argument("injected fault on ion " + std::to_string(f.ion) +
                                        " does not belong to the chosen gate");
        }
    }
}

ShotRecord Simulator::assemble(const std::vector<std::uint8_t> &by_ion) const {
    ShotRecord rec;
    for (const auto &[name, ions] : circuit_.blocks) {
        auto &bits = rec.bits[name];
        bits.reserve(ions.size());
        for (int ion : ions) {
            bits.push_back(by_ion[ion]);
        }
    }
    return rec;
}

ShotRecord Simulator::run_shot(Rng &rng, const InjectedFault *inject) const {
    if (inject) {
        validate_injection(*inject);
    }
    ProductState state(circuit_.ions);
    std::vector<std::uint8_t> by_ion(max_ion_ + 1, 0);
    std::vector<FaultEvent> log;
    std::vector<std::int64_t> trace;

    auto apply_fault = [&](std::size_t g, const PauliFault &f, const char *source) {
        if (state.contains(f.ion)) {
            state.apply_pauli(f.ion, f.pauli);
        }
        if (options_.record_faults) {
            log.push_back({g, f, source});
        }
    };
    auto apply_injection = [&](std::size_t boundary) {
        if (inject && inject->boundary == boundary) {
            for (const auto &f : inject->paulis) {
                apply_fault(boundary, f, "inject");
            }
        }
    };

    MotionalState motion{sample_initial_phonons(params_.n_bar0, rng), 0.0};
    apply_injection(0);
    for (std::size_t g = 0; g < measure_index_; ++g) {
        const NativeGate &gate = circuit_.gates[g];
        for (std::size_t k : idles_before_[g]) {
            const IdleInterval &idle = circuit_.idles[k];
            if (auto f = sample_idle_fault(idle.ion, idle.duration_us, params_, rng)) {
                apply_fault(g, *f, "idle");
            }
        }
        const bool pulse = gate.kind == GateKind::kR || gate.kind == GateKind::kXX;
        if (pulse) {
            if (params_.cooling_reset) {
                motion = MotionalState{sample_initial_phonons(params_.n_bar0, rng), gate.start_us};
            } else {
                motion = advance_phonons(motion, gate.start_us - motion.t_us, params_.n_dot_per_us, rng);
            }
            if (options_.record_phonons) {
                trace.push_back(motion.n);
            }
        }
        switch (gate.kind) {
            case GateKind::kR: {
                const int ion = gate.ions[0];
                state.apply_rotation(
                    ion, gate.phi, effective_angle_1q(gate.theta, params_.u_of(ion), motion.n, params_.n_bar0));
                break;
            }
            case GateKind::kRZ:
                state.apply_rz(gate.ions[0], gate.theta);
                break;
            case GateKind::kXX: {
                const int i = gate.ions[0], j = gate.ions[1];
                state.apply_xx(i, j,
                               effective_angle_2q(gate.theta, params_.u_of(i), params_.u_of(j), motion.n,
                                                  params_.n_bar0));
                for (const auto &f : sample_gate_faults(gate, params_, rng)) {
                    apply_fault(g, f, "xx");
                }
                if (params_.crosstalk.enabled) {
                    for (const auto &rot : crosstalk_rotations(i, j, gate.theta, params_, circuit_.ions)) {
                        state.apply_xx(rot.ion_a, rot.ion_b, rot.angle);
                    }
                }
                break;
            }
            case GateKind::kIdle:
                for (const auto &f : sample_gate_faults(gate, params_, rng)) {
                    apply_fault(g, f, "idle");
                }
                break;
            case GateKind::kMeasureZ:
                break;
        }
        apply_injection(g + 1);
        for (int ion : finished_after_[g]) {
            by_ion[ion] = static_cast<std::uint8_t>(state.measure(ion, rng));
        }
    }
    // Idle gaps that end at the readout: Z before a Z measurement is inert,
    // but the draws keep the stream layout independent of early readout.
    for (std::size_t k : idles_before_[measure_index_]) {
        const IdleInterval &idle = circuit_.idles[k];
        if (auto f = sample_idle_fault(idle.ion, idle.duration_us, params_, rng)) {
            apply_fault(measure_index_, *f, "idle");
        }
    }
    for (int ion : circuit_.ions) {
        if (state.contains(ion)) {
            by_ion[ion] = static_cast<std::uint8_t>(state.measure(ion, rng));
        }
    }
    for (int ion : circuit_.ions) {
        by_ion[ion] = static_cast<std::uint8_t>(sample_readout_flip(by_ion[ion], params_, rng));
    }
    ShotRecord rec = assemble(by_ion);
    rec.fault_log = std::move(log);
    rec.phonon_trace = std::move(trace);
    return rec;
}

std::vector<std::pair<ShotRecord, double>> Simulator::exact_outcomes(const InjectedFault &inject) const {
    validate_injection(inject);
    ProductState state(circuit_.ions);
    auto apply_injection = [&](std::size_t boundary) {
        if (inject.boundary == boundary) {
            for (const auto &f : inject.paulis) {
                state.apply_pauli(f.ion, f.pauli);
            }
        }
    };
    apply_injection(0);
    for (std::size_t g = 0; g < measure_index_; ++g) {
        const NativeGate &gate = circuit_.gates[g];
        switch (gate.kind) {
            case GateKind::kR:
                state.apply_rotation(gate.ions[0], gate.phi, gate.theta);
                break;
            case GateKind::kRZ:
                state.apply_rz(gate.ions[0], gate.theta);
                break;
            case GateKind::kXX:
                state.apply_xx(gate.ions[0], gate.ions[1], gate.theta);
                break;
            default:
                break;
        }
        apply_injection(g + 1);
    }
    std::vector<std::pair<ShotRecord, double>> out;
    std::vector<std::uint8_t> by_ion(max_ion_ + 1, 0);
    for (const auto &[bits, p] : state.outcome_distribution(circuit_.ions, 1e-13)) {
        for (std::size_t k = 0; k < bits.size(); ++k) {
            by_ion[circuit_.ions[k]] = bits[k];
        }
        out.emplace_back(assemble(by_ion), p);
    }
    return out;
}

ShotRecord run_shot(const NativeCircuit &circuit, const NoiseParams &params, Rng &rng, const RunOptions &options) {
    return Simulator(circuit, params, options).run_shot(rng);
}

void run_monte_carlo(const Simulator &sim, std::uint64_t shots, const SeedPolicy &seeds, unsigned workers,
                     const ShotSink &sink, std::uint64_t first_shot) {
    if (shots == 0) {
        throw std::invalid_argument("run_monte_carlo needs at least one shot");
    }
    workers = std::max(1u, workers);
    if (workers == 1) {
        for (std::uint64_t s = first_shot; s < first_shot + shots; ++s) {
            Rng rng = seeds.rng_for(s);
            sink(s, sim.run_shot(rng));
        }
        return;
    }
    // Fill a chunk in parallel, then drain it in order.
    const std::uint64_t chunk = 1024 * workers;
    std::vector<ShotRecord> buffer;
    for (std::uint64_t begin = first_shot; begin < first_shot + shots; begin += chunk) {
        const std::uint64_t n = std::min<std::uint64_t>(chunk, first_shot + shots - begin);
        buffer.assign(n, ShotRecord{});
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto work = [&] {
            try {
                for (std::uint64_t k = next++; k < n; k = next++) {
                    Rng rng = seeds.rng_for(begin + k);
                    buffer[k] = sim.run_shot(rng);
                }
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
        for (auto &t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
        for (std::uint64_t k = 0; k < n; ++k) {
            sink(begin + k, buffer[k]);
        }
    }
}

double inject_fault_run(const NativeCircuit &circuit, const InjectedFault &inject, const ErrorPredicate &is_error) {
    const Simulator sim(circuit, NoiseParams::noiseless(), RunOptions{false, false, false});
    double p = 0.0;
    for (const auto &[rec, prob] : sim.exact_outcomes(inject)) {
        if (is_error(rec).value_or(false)) {
            p += prob;
        }
    }
    return p;
}

}  // namespace bsec
