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

#include "bsec/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bsec {

PairTable PairTable::from_matrix(const std::vector<std::vector<double>> &rows) {
    PairTable t;
    t.n_ = rows.size();
    t.values_.reserve(t.n_ * t.n_);
    for (const auto &row : rows) {
        if (row.size() != t.n_) {
            throw std::invalid_argument("pair matrix must be square");
        }
        t.values_.insert(t.values_.end(), row.begin(), row.end());
    }
    for (std::size_t i = 0; i < t.n_; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(t.values_[i * t.n_ + j] - t.values_[j * t.n_ + i]) > 1e-15) {
                throw std::invalid_argument("pair matrix must be symmetric (entry " + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ")");
            }
        }
    }
    return t;
}

double PairTable::at(int ion_i, int ion_j) const {
    if (values_.empty()) {
        return uniform_;
    }
    if (ion_i < 1 || ion_j < 1 || static_cast<std::size_t>(ion_i) > n_ || static_cast<std::size_t>(ion_j) > n_) {
        throw std::out_of_range("pair table has no entry for ions " + std::to_string(ion_i) + "," +
                                std::to_string(ion_j));
    }
    return values_[(ion_i - 1) * n_ + (ion_j - 1)];
}

std::vector<std::vector<double>> PairTable::to_matrix() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            out[i][j] = values_[i * n_ + j];
        }
    }
    return out;
}

void PairTable::scale(double factor) {
    uniform_ *= factor;
    for (double &v : values_) {
        v *= factor;
    }
}

std::pair<double, double> PairTable::range() const {
    if (values_.empty()) {
        return {uniform_, uniform_};
    }
    auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    return {*lo, *hi};
}

double motional_coupling(double b_squared) {
    constexpr double kHbar = 1.054571817e-34;
    constexpr double kAtomicMass = 1.66053906660e-27;
    constexpr double kYb171Mass = 170.9363258 * kAtomicMass;
    constexpr double kWaist = 450e-9;
    constexpr double kOmega0 = 2 * std::numbers::pi * 174e3;
    return b_squared * kHbar / (kYb171Mass * kWaist * kWaist * kOmega0);
}

double default_motional_coupling() { return motional_coupling(1.0 / 23.0); }

NoiseParams NoiseParams::defaults() {
    NoiseParams p;
    p.u.assign(18, default_motional_coupling());
    return p;
}

NoiseParams NoiseParams::noiseless() {
    NoiseParams p;
    p.u.assign(18, 0.0);
    p.n_dot_per_us = 0.0;
    p.p_z = PairTable(0.0);
    p.p_x = PairTable(0.0);
    p.gamma_deph_per_us = 0.0;
    p.p_1to0 = 0.0;
    p.p_0to1 = 0.0;
    return p;
}

namespace {

void check_probability(double p, const std::string &name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(name + " must be a probability in [0,1], got " + std::to_string(p));
    }
}

void check_rate(double r, const std::string &name) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument(name + " must be a finite non-negative rate, got " + std::to_string(r));
    }
}

}  // namespace

void NoiseParams::validate() const {
    for (std::size_t i = 0; i < u.size(); ++i) {
        check_rate(u[i], "u[" + std::to_string(i + 1) + "]");
    }
    check_rate(n_bar0, "n_bar0");
    check_rate(n_dot_per_us, "n_dot");
    check_rate(gamma_deph_per_us, "gamma_deph");
    check_probability(p_1to0, "p_1to0");
    check_probability(p_0to1, "p_0to1");
    for (const auto *table : {&p_z, &p_x}) {
        auto [lo, hi] = table->range();
        check_probability(lo, table == &p_z ? "p_z" : "p_x");
        check_probability(hi, table == &p_z ? "p_z" : "p_x");
    }
    if (durations.sq_segment_us <= 0 || durations.sq_segments <= 0 || durations.xx_us <= 0 ||
        durations.measure_us < 0) {
        throw std::invalid_argument("gate durations must be positive");
    }
    if (crosstalk.enabled) {
        const std::size_t n = crosstalk.chi.size();
        if (n == 0 || crosstalk.A.size() != n) {
            throw std::invalid_argument("crosstalk enabled but chi/A are missing or mismatched");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (crosstalk.chi[i].size() != n || crosstalk.A[i].size() != n) {
                throw std::invalid_argument("crosstalk chi/A must be N x N (x N)");
            }
            for (const auto &a_row : crosstalk.A[i]) {
                if (a_row.size() != n) {
                    throw std::invalid_argument("crosstalk A must be N x N x N");
                }
            }
        }
    }
}

double NoiseParams::u_of(int ion) const {
    if (ion < 1 || static_cast<std::size_t>(ion) > u.size()) {
        throw std::out_of_range("no motional coupling u for ion " + std::to_string(ion));
    }
    return u[ion - 1];
}

double rabi_decay_f(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("rabi_decay_f needs finite x >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x <= 20.0) {
        // exp(-x) sum_k (x/2)^(2k) / (k!)^2, scaled from the first term on.
        const double q = 0.25 * x * x;
        double term = std::exp(-x);
        double sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (k > x && term < 1e-18 * sum) {
                break;
            }
        }
        return sum;
    }
    // Large-argument expansion of exp(-x) I0(x); the smallest term is ~exp(-2x).
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
        if (next >= term) {
            break;
        }
        term = next;
        sum += term;
        if (term < 1e-18 * sum) {
            break;
        }
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

std::int64_t sample_initial_phonons(double n_bar0, Rng &rng) {
    if (!(n_bar0 >= 0.0)) {
        throw std::invalid_argument("n_bar0 must be non-negative");
    }
    if (n_bar0 == 0.0) {
        return 0;
    }
    std::geometric_distribution<std::int64_t> dist(1.0 / (n_bar0 + 1.0));
    return dist(rng);
}

MotionalState advance_phonons(MotionalState state, double dt_us, double n_dot_per_us, Rng &rng) {
    if (dt_us < 0.0) {
        throw std::invalid_argument("advance_phonons: negative time step");
    }
    const double rate_t = n_dot_per_us * dt_us;
    state.t_us += dt_us;
    if (rate_t <= 0.0) {
        return state;
    }
    // Each phonon evolves as a critical birth-death lineage and the (n+1)
    // term adds immigration at the same rate; both resolve into a binomial
    // survivor count plus a negative-binomial total.
    const double p = 1.0 / (1.0 + rate_t);
    std::int64_t survivors = 0;
    if (state.n > 0) {
        std::binomial_distribution<std::int64_t> surv(state.n, p);
        survivors = surv(rng);
    }
    std::negative_binomial_distribution<std::int64_t> extra(survivors + 1, p);
    state.n = survivors + extra(rng);
    return state;
}

MotionalState advance_phonons_stepped(MotionalState state, double dt_us, double n_dot_per_us, Rng &rng) {
    if (dt_us < 0.0) {
        throw std::invalid_argument("advance_phonons_stepped: negative time step");
    }
    double remaining = dt_us;
    while (remaining > 0.0 && n_dot_per_us > 0.0) {
        const double n = static_cast<double>(state.n);
        const double step = std::min(remaining, 0.1 / ((n + 1.0) * n_dot_per_us));
        const double up = (n + 1.0) * n_dot_per_us * step;
        const double down = n * n_dot_per_us * step;
        const double r = uniform01(rng);
        if (r < up) {
            ++state.n;
        } else if (r < up + down) {
            --state.n;
        }
        remaining -= step;
    }
    state.t_us += dt_us;
    return state;
}

double effective_angle_1q(double theta, double u_i, std::int64_t n, double n_bar0) {
    return theta * (1.0 + u_i * n_bar0) * rabi_decay_f(u_i * static_cast<double>(n));
}

double effective_angle_2q(double theta, double u_i, double u_j, std::int64_t n, double n_bar0) {
    const double nn = static_cast<double>(n);
    return theta * (1.0 + u_i * n_bar0) * (1.0 + u_j * n_bar0) * rabi_decay_f(u_i * nn) * rabi_decay_f(u_j * nn);
}

std::vector<PauliFault> sample_gate_faults(const NativeGate &gate, const NoiseParams &params, Rng &rng) {
    std::vector<PauliFault> faults;
    if (gate.kind == GateKind::kXX) {
        const int i = gate.ions[0], j = gate.ions[1];
        const double pz = params.p_z.at(i, j);
        const double px = params.p_x.at(i, j);
        if (pz < 0 || pz > 1 || px < 0 || px > 1) {
            throw std::domain_error("XX fault probability out of range");
        }
        const bool zi = bernoulli(rng, pz);
        const bool zj = bernoulli(rng, pz);
        const bool xi = bernoulli(rng, px);
        const bool xj = bernoulli(rng, px);
        auto merge = [](bool x, bool z) { return static_cast<Pauli>((x ? 1 : 0) | (z ? 2 : 0)); };
        if (zi || xi) {
            faults.push_back({i, merge(xi, zi)});
        }
        if (zj || xj) {
            faults.push_back({j, merge(xj, zj)});
        }
    } else if (gate.kind == GateKind::kIdle) {
        for (int ion : gate.ions) {
            if (auto f = sample_idle_fault(ion, gate.duration_us, params, rng)) {
                faults.push_back(*f);
            }
        }
    }
    return faults;
}

std::optional<PauliFault> sample_idle_fault(int ion, double duration_us, const NoiseParams &params, Rng &rng) {
    const double p = params.gamma_deph_per_us * duration_us;
    if (p < 0.0 || p > 1.0) {
        throw std::domain_error("idle dephasing probability out of range: " + std::to_string(p));
    }
    if (p > 0.0 && bernoulli(rng, p)) {
        return PauliFault{ion, Pauli::kZ};
    }
    return std::nullopt;
}

int sample_readout_flip(int bit, const NoiseParams &params, Rng &rng) {
    const double p = bit ? params.p_1to0 : params.p_0to1;
    if (p > 0.0 && bernoulli(rng, p)) {
        return bit ^ 1;
    }
    return bit;
}

std::vector<CrosstalkRotation> crosstalk_rotations(int ion_i, int ion_j, double theta, const NoiseParams &params,
                                                   std::span<const int> other_ions) {
    std::vector<CrosstalkRotation> out;
    const Crosstalk &ct = params.crosstalk;
    if (!ct.enabled) {
        return out;
    }
    const int n = static_cast<int>(ct.chi.size());
    if (n == 0 || static_cast<int>(ct.A.size()) != n) {
        throw std::invalid_argument("crosstalk enabled but chi/A are missing");
    }
    auto check = [n](int ion) {
        if (ion < 1 || ion > n) {
            throw std::out_of_range("crosstalk tables do not cover ion " + std::to_string(ion));
        }
    };
    check(ion_i);
    check(ion_j);
    const double pulse = theta / (std::numbers::pi / 4);
    for (int k : other_ions) {
        if (k == ion_i || k == ion_j) {
            continue;
        }
        check(k);
        const double c = ct.chi[ion_i - 1][k - 1] + ct.chi[ion_j - 1][k - 1];
        if (c == 0.0) {
            continue;
        }
        const double a1 = c * ct.A[ion_i - 1][ion_j - 1][k - 1] * pulse;
        const double a2 = c * ct.A[ion_j - 1][ion_i - 1][k - 1] * pulse;
        if (a1 != 0.0) {
            out.push_back({ion_i, k, a1});
        }
        if (a2 != 0.0) {
            out.push_back({ion_j, k, a2});
        }
    }
    return out;
}

LinearFit fit_through_origin(std::span<const double> y, std::span<const double> x, std::span<const double> sigma) {
    if (y.size() != x.size() || y.empty()) {
        throw std::invalid_argument("fit_through_origin: need equal-length non-empty sequences");
    }
    if (!sigma.empty() && sigma.size() != x.size()) {
        throw std::invalid_argument("fit_through_origin: sigma length mismatch");
    }
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] >= 0.0) || !std::isfinite(y[k])) {
            throw std::invalid_argument("fit_through_origin: x must be non-negative and y finite");
        }
        double w = 1.0;
        if (!sigma.empty()) {
            if (!(sigma[k] > 0.0)) {
                throw std::invalid_argument("fit_through_origin: sigma must be positive");
            }
            w = 1.0 / (sigma[k] * sigma[k]);
        }
        sxx += w * x[k] * x[k];
        sxy += w * x[k] * y[k];
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_through_origin: degenerate abscissa (all zero)");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    if (!sigma.empty()) {
        fit.std_error = std::sqrt(1.0 / sxx);
    } else if (x.size() > 1) {
        double rss = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double r = y[k] - fit.slope * x[k];
            rss += r * r;
        }
        fit.std_error = std::sqrt(rss / static_cast<double>(x.size() - 1) / sxx);
    } else {
        fit.std_error = std::numeric_limits<double>::infinity();
    }
    return fit;
}

NoiseParams apply_improved(NoiseParams params) {
    params.cooling_reset = true;
    params.p_z.scale(1.0 / 5.0);
    params.p_x.scale(1.0 / 4.0);
    return params;
}

}  // namespace bsec
