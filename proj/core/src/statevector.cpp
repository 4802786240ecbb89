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

#include "bsec/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace bsec {

namespace {

constexpr Amp kI{0.0, 1.0};

void check_norm(double n2) {
    if (std::abs(n2 - 1.0) > 1e-6) {
        throw std::runtime_error("state norm drifted to " + std::to_string(n2));
    }
}

}  // namespace

StateVector::StateVector(std::vector<int> ions) : ions_(std::move(ions)) {
    if (ions_.size() > 30) {
        throw std::invalid_argument("StateVector: too many qubits");
    }
    for (std::size_t a = 0; a < ions_.size(); ++a) {
        for (std::size_t b = a + 1; b < ions_.size(); ++b) {
            if (ions_[a] == ions_[b]) {
                throw std::invalid_argument("StateVector: duplicate ion " + std::to_string(ions_[a]));
            }
        }
    }
    amp_.assign(std::size_t{1} << ions_.size(), Amp{});
    amp_[0] = 1.0;
}

int StateVector::index_of(int ion) const {
    for (std::size_t k = 0; k < ions_.size(); ++k) {
        if (ions_[k] == ion) {
            return static_cast<int>(k);
        }
    }
    throw std::out_of_range("ion " + std::to_string(ion) + " is not in this state");
}

bool StateVector::contains(int ion) const { return std::find(ions_.begin(), ions_.end(), ion) != ions_.end(); }

void StateVector::apply_matrix(int ion, const Amp (&m)[2][2]) {
    const std::size_t stride = std::size_t{1} << index_of(ion);
    const std::size_t size = amp_.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const Amp a0 = amp_[k];
            const Amp a1 = amp_[k + stride];
            amp_[k] = m[0][0] * a0 + m[0][1] * a1;
            amp_[k + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

void StateVector::apply_rotation(int ion, double phi, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const Amp e_minus = std::polar(1.0, -phi), e_plus = std::polar(1.0, phi);
    const Amp m[2][2] = {{c, -kI * s * e_minus}, {-kI * s * e_plus, c}};
    apply_matrix(ion, m);
}

void StateVector::apply_rz(int ion, double theta) {
    const Amp lo = std::polar(1.0, -theta / 2), hi = std::polar(1.0, theta / 2);
    const std::size_t mask = std::size_t{1} << index_of(ion);
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        amp_[k] *= (k & mask) ? hi : lo;
    }
}

void StateVector::apply_xx(int ion_i, int ion_j, double theta) {
    const int bi = index_of(ion_i), bj = index_of(ion_j);
    if (bi == bj) {
        throw std::invalid_argument("apply_xx needs two distinct ions");
    }
    const std::size_t flip = (std::size_t{1} << bi) | (std::size_t{1} << bj);
    const std::size_t low = std::size_t{1} << std::min(bi, bj);
    const double c = std::cos(theta);
    const Amp ms = -kI * std::sin(theta);
    // Visit each {k, k ^ flip} pair once: the lower of the two bits is clear.
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        if (k & low) {
            continue;
        }
        const std::size_t l = k ^ flip;
        const Amp a = amp_[k], b = amp_[l];
        amp_[k] = c * a + ms * b;
        amp_[l] = c * b + ms * a;
    }
}

void StateVector::apply_pauli(int ion, Pauli p) {
    const std::size_t mask = std::size_t{1} << index_of(ion);
    if (has_z(p)) {
        for (std::size_t k = 0; k < amp_.size(); ++k) {
            if (k & mask) {
                amp_[k] = -amp_[k];
            }
        }
    }
    if (has_x(p)) {
        for (std::size_t k = 0; k < amp_.size(); ++k) {
            if (!(k & mask)) {
                std::swap(amp_[k], amp_[k | mask]);
            }
        }
    }
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Amp &a : amp_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

double StateVector::probability_one(int ion) const {
    const std::size_t mask = std::size_t{1} << index_of(ion);
    double p = 0.0;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        if (k & mask) {
            p += std::norm(amp_[k]);
        }
    }
    return p;
}

int StateVector::measure(int ion, Rng &rng) {
    const int b = index_of(ion);
    const std::size_t stride = std::size_t{1} << b;
    double p0 = 0.0, p1 = 0.0;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        ((k & stride) ? p1 : p0) += std::norm(amp_[k]);
    }
    check_norm(p0 + p1);
    const int outcome = uniform01(rng) * (p0 + p1) < p1 ? 1 : 0;
    const double scale = 1.0 / std::sqrt(outcome ? p1 : p0);
    std::vector<Amp> next(amp_.size() / 2);
    const std::size_t low_mask = stride - 1;
    for (std::size_t k = 0; k < next.size(); ++k) {
        const std::size_t full = ((k & ~low_mask) << 1) | (outcome ? stride : 0) | (k & low_mask);
        next[k] = amp_[full] * scale;
    }
    amp_ = std::move(next);
    ions_.erase(ions_.begin() + b);
    return outcome;
}

std::vector<std::uint8_t> StateVector::measure_all(Rng &rng) {
    double total = 0.0;
    for (const Amp &a : amp_) {
        total += std::norm(a);
    }
    check_norm(total);
    const double r = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t pick = amp_.size() - 1;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        acc += std::norm(amp_[k]);
        if (r < acc) {
            pick = k;
            break;
        }
    }
    std::vector<std::uint8_t> bits(ions_.size());
    for (std::size_t q = 0; q < ions_.size(); ++q) {
        bits[q] = static_cast<std::uint8_t>((pick >> q) & 1u);
    }
    ions_.clear();
    amp_.assign(1, Amp{1.0});
    return bits;
}

StateVector StateVector::tensor(const StateVector &a, const StateVector &b) {
    std::vector<int> ions = a.ions_;
    ions.insert(ions.end(), b.ions_.begin(), b.ions_.end());
    StateVector out(std::move(ions));
    const std::size_t na = a.amp_.size();
    for (std::size_t ib = 0; ib < b.amp_.size(); ++ib) {
        for (std::size_t ia = 0; ia < na; ++ia) {
            out.amp_[ia + ib * na] = a.amp_[ia] * b.amp_[ib];
        }
    }
    return out;
}

std::vector<std::pair<std::uint64_t, double>> StateVector::outcome_distribution(double cutoff) const {
    std::vector<std::pair<std::uint64_t, double>> out;
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        const double p = std::norm(amp_[k]);
        if (p > cutoff) {
            out.emplace_back(k, p);
        }
    }
    return out;
}

double StateVector::fidelity(const StateVector &other) const {
    if (other.ions_ != ions_) {
        throw std::invalid_argument("fidelity: states use different ion orders");
    }
    Amp overlap{};
    for (std::size_t k = 0; k < amp_.size(); ++k) {
        overlap += std::conj(amp_[k]) * other.amp_[k];
    }
    return std::norm(overlap);
}

ProductState::ProductState(std::span<const int> ions) {
    int max_ion = 0;
    for (int ion : ions) {
        if (ion < 0) {
            throw std::invalid_argument("ProductState: negative ion label");
        }
        max_ion = std::max(max_ion, ion);
    }
    owner_.assign(max_ion + 1, -1);
    for (int ion : ions) {
        if (owner_[ion] != -1) {
            throw std::invalid_argument("ProductState: duplicate ion " + std::to_string(ion));
        }
        owner_[ion] = static_cast<int>(clusters_.size());
        clusters_.emplace_back(std::vector<int>{ion});
    }
}

bool ProductState::contains(int ion) const {
    return ion >= 0 && static_cast<std::size_t>(ion) < owner_.size() && owner_[ion] >= 0;
}

int ProductState::cluster_of(int ion) const {
    if (!contains(ion)) {
        throw std::out_of_range("ion " + std::to_string(ion) + " is not in this state");
    }
    return owner_[ion];
}

int ProductState::cluster_size(int ion) const { return clusters_[cluster_of(ion)].num_qubits(); }

std::size_t ProductState::max_cluster_qubits() const {
    std::size_t m = 0;
    for (const auto &c : clusters_) {
        m = std::max(m, c.ions().size());
    }
    return m;
}

void ProductState::merge(int ca, int cb) {
    clusters_[ca] = StateVector::tensor(clusters_[ca], clusters_[cb]);
    for (int ion : clusters_[cb].ions()) {
        owner_[ion] = ca;
    }
    clusters_[cb] = StateVector(std::vector<int>{});
}

void ProductState::apply_rotation(int ion, double phi, double theta) {
    clusters_[cluster_of(ion)].apply_rotation(ion, phi, theta);
}

void ProductState::apply_rz(int ion, double theta) { clusters_[cluster_of(ion)].apply_rz(ion, theta); }

void ProductState::apply_xx(int ion_i, int ion_j, double theta) {
    const int ci = cluster_of(ion_i), cj = cluster_of(ion_j);
    if (ci != cj) {
        merge(std::min(ci, cj), std::max(ci, cj));
    }
    clusters_[owner_[ion_i]].apply_xx(ion_i, ion_j, theta);
}

void ProductState::apply_pauli(int ion, Pauli p) { clusters_[cluster_of(ion)].apply_pauli(ion, p); }

int ProductState::measure(int ion, Rng &rng) {
    const int c = cluster_of(ion);
    const int bit = clusters_[c].measure(ion, rng);
    owner_[ion] = -1;
    return bit;
}

StateVector ProductState::to_state_vector(std::span<const int> order) const {
    std::vector<int> seen;
    StateVector joint{std::vector<int>{}};
    for (int ion : order) {
        const int c = cluster_of(ion);
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
            seen.push_back(c);
            joint = StateVector::tensor(joint, clusters_[c]);
        }
    }
    if (joint.num_qubits() != static_cast<int>(order.size())) {
        throw std::invalid_argument("to_state_vector: order must cover whole clusters");
    }
    // Permute into the requested order.
    StateVector out(std::vector<int>(order.begin(), order.end()));
    std::vector<int> dest(joint.num_qubits());
    for (int q = 0; q < joint.num_qubits(); ++q) {
        dest[q] = out.index_of(joint.ions()[q]);
    }
    auto src = joint.amplitudes();
    auto dst = out.amplitudes();
    for (std::size_t k = 0; k < src.size(); ++k) {
        std::size_t t = 0;
        for (int q = 0; q < joint.num_qubits(); ++q) {
            if ((k >> q) & 1u) {
                t |= std::size_t{1} << dest[q];
            }
        }
        dst[t] = src[k];
    }
    return out;
}

std::vector<std::pair<std::vector<std::uint8_t>, double>> ProductState::outcome_distribution(
    std::span<const int> order, double cutoff) const {
    std::vector<int> position(owner_.size(), -1);
    for (std::size_t k = 0; k < order.size(); ++k) {
        cluster_of(order[k]);
        position[order[k]] = static_cast<int>(k);
    }
    std::vector<std::pair<std::vector<std::uint8_t>, double>> acc;
    acc.emplace_back(std::vector<std::uint8_t>(order.size(), 0), 1.0);
    for (const auto &cluster : clusters_) {
        if (cluster.num_qubits() == 0) {
            continue;
        }
        // Marginal over the requested ions of this cluster.
        std::map<std::vector<std::uint8_t>, double> marginal;
        for (const auto &[index, p] : cluster.outcome_distribution(cutoff)) {
            std::vector<std::uint8_t> key(cluster.ions().size());
            for (std::size_t q = 0; q < key.size(); ++q) {
                key[q] = position[cluster.ions()[q]] >= 0 ? static_cast<std::uint8_t>((index >> q) & 1u) : 0;
            }
            marginal[key] += p;
        }
        std::vector<std::pair<std::vector<std::uint8_t>, double>> next;
        next.reserve(acc.size() * marginal.size());
        for (const auto &[bits, p] : acc) {
            for (const auto &[key, q] : marginal) {
                auto b = bits;
                for (std::size_t k = 0; k < key.size(); ++k) {
                    const int pos = position[cluster.ions()[k]];
                    if (pos >= 0) {
                        b[pos] = key[k];
                    }
                }
                next.emplace_back(std::move(b), p * q);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace bsec
