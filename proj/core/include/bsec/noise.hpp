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
 * Trapped-ion error model.
 *
 * Axial motion of the lowest mode is treated classically: a phonon count n
 * sampled from the thermal law and heated by a biased random walk. The
 * count rescales every rotation angle through f(x) = exp(-x) I0(x) with
 * x = u_i n. Stochastic errors are Pauli insertions: Z and X flips after
 * each XX gate, Z flips on idling ions, and asymmetric readout flips.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bsec/circuit.hpp"
#include "bsec/types.hpp"

namespace bsec {

/// Symmetric per-ion-pair probability table with a uniform fallback.
/// Ions are 1-based; a full matrix is stored row-major over ions 1..N.
class PairTable {
  public:
    PairTable() = default;
    explicit PairTable(double uniform) : uniform_(uniform) {}

    /// Throws std::invalid_argument when `rows` is not square and symmetric.
    static PairTable from_matrix(const std::vector<std::vector<double>> &rows);

    double at(int ion_i, int ion_j) const;
    bool is_uniform() const { return values_.empty(); }
    double uniform_value() const { return uniform_; }
    std::size_t size() const { return n_; }
    std::vector<std::vector<double>> to_matrix() const;

    void scale(double factor);
    /// Smallest and largest stored value.
    std::pair<double, double> range() const;

  private:
    double uniform_ = 0.0;
    std::size_t n_ = 0;
    std::vector<double> values_;
};

struct Crosstalk {
    bool enabled = false;
    std::vector<std::vector<double>> chi;             // chi[i-1][k-1]
    std::vector<std::vector<std::vector<double>>> A;  // A[i-1][j-1][k-1]
};

struct NoiseParams {
    std::vector<double> u;  // u[ion - 1]
    double n_bar0 = 660.0;
    double n_dot_per_us = 0.18;  // 180 phonons/ms
    PairTable p_z{0.01};
    PairTable p_x{0.004};
    double gamma_deph_per_us = 1e-5;
    double p_1to0 = 4e-3;
    double p_0to1 = 1.5e-3;
    GateDurations durations;
    Crosstalk crosstalk;
    bool cooling_reset = false;

    /// Shipped defaults for an 18-ion layout.
    static NoiseParams defaults();
    /// Every error source switched off.
    static NoiseParams noiseless();

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
    /// Throws std::out_of_range if the ion has no coupling entry.
    double u_of(int ion) const;
};

/// u = b^2 hbar / (m w^2 omega0) for a 171Yb+ ion, 450 nm beam waist and a
/// 2pi x 174 kHz mode; b^2 is the ion's squared mode participation.
double motional_coupling(double b_squared);

/// Coupling for uniform participation b^2 = 1/23 of a 23-ion chain.
double default_motional_coupling();

/// exp(-x) I0(x), evaluated without forming exp(x) or I0(x).
/// Throws std::domain_error for negative or non-finite x.
double rabi_decay_f(double x);

struct MotionalState {
    std::int64_t n = 0;
    double t_us = 0.0;
};

/// Thermal (geometric) sample with mean n_bar0.
std::int64_t sample_initial_phonons(double n_bar0, Rng &rng);

/// Advances the heating walk (up with rate (n+1) n_dot, down with rate
/// n n_dot) by dt using its exact transition law.
MotionalState advance_phonons(MotionalState state, double dt_us, double n_dot_per_us, Rng &rng);

/// The same walk advanced literally in Bernoulli steps with
/// (n+1) n_dot dt <= 0.1. Cost grows like n n_dot dt; reference use only.
MotionalState advance_phonons_stepped(MotionalState state, double dt_us, double n_dot_per_us, Rng &rng);

double effective_angle_1q(double theta, double u_i, std::int64_t n, double n_bar0);
double effective_angle_2q(double theta, double u_i, double u_j, std::int64_t n, double n_bar0);

/// Pauli errors following one gate. XX gates get independent Z and X flips
/// on both ions; Idle gates get Z flips; rotations and measurements get none.
/// At most one fault per ion is returned (X and Z on one ion merge to Y).
std::vector<PauliFault> sample_gate_faults(const NativeGate &gate, const NoiseParams &params, Rng &rng);

/// Z with probability gamma_deph * duration.
std::optional<PauliFault> sample_idle_fault(int ion, double duration_us, const NoiseParams &params, Rng &rng);

int sample_readout_flip(int bit, const NoiseParams &params, Rng &rng);

struct CrosstalkRotation {
    int ion_a = 0;
    int ion_b = 0;
    double angle = 0.0;
};

/// Spurious XX rotations coupling i and j to every other ion k after an
/// XX(theta) on (i, j). The tabulated A refers to a maximally entangling
/// pulse; the result scales with theta / (pi/4).
std::vector<CrosstalkRotation> crosstalk_rotations(int ion_i, int ion_j, double theta, const NoiseParams &params,
                                                   std::span<const int> other_ions);

struct LinearFit {
    double slope = 0.0;
    double std_error = 0.0;
};

/// Weighted least squares for y = slope * x. With `sigma` empty the weights
/// are uniform and the error comes from the residual scatter.
LinearFit fit_through_origin(std::span<const double> y, std::span<const double> x,
                             std::span<const double> sigma = {});

/// Mean phonon number from per-ion decay parameters eps_bar_i = n_bar u_i.
inline LinearFit fit_mean_phonon(std::span<const double> eps_bar, std::span<const double> u,
                                 std::span<const double> sigma = {}) {
    return fit_through_origin(eps_bar, u, sigma);
}

/// Improved-hardware projection: sympathetic cooling before every gate,
/// Z flips / 5 and X flips / 4. Applying it twice divides twice.
NoiseParams apply_improved(NoiseParams params);

}  // namespace bsec
