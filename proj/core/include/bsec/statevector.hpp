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
 * Dense complex-amplitude states over labeled ions.
 *
 * StateVector is a plain 2^q array. ProductState keeps a list of disjoint
 * StateVector clusters and merges two clusters only when an entangling gate
 * first connects them, which keeps most circuits far below 2^18 amplitudes.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bsec/types.hpp"

namespace bsec {

using Amp = std::complex<double>;

/// Ion k of ions() lives in bit k of the amplitude index.
class StateVector {
  public:
    /// All ions in |0>.
    explicit StateVector(std::vector<int> ions = {});

    const std::vector<int> &ions() const { return ions_; }
    int num_qubits() const { return static_cast<int>(ions_.size()); }
    /// Bit position of `ion`; throws std::out_of_range if absent.
    int index_of(int ion) const;
    bool contains(int ion) const;

    std::span<const Amp> amplitudes() const { return amp_; }
    std::span<Amp> amplitudes() { return amp_; }

    /// exp(-i theta/2 (cos phi X + sin phi Y)).
    void apply_rotation(int ion, double phi, double theta);
    /// exp(-i theta/2 Z).
    void apply_rz(int ion, double theta);
    /// exp(-i theta X_i X_j).
    void apply_xx(int ion_i, int ion_j, double theta);
    /// Pauli up to global phase.
    void apply_pauli(int ion, Pauli p);
    void apply_matrix(int ion, const Amp (&m)[2][2]);

    double norm() const;
    double probability_one(int ion) const;

    /// Projective Z measurement of one ion; the ion is removed from the state.
    /// Throws std::runtime_error if the norm has drifted by more than 1e-6.
    int measure(int ion, Rng &rng);

    /// Samples every ion at once; bits follow ions() order. Consumes the state.
    std::vector<std::uint8_t> measure_all(Rng &rng);

    /// |a> (x) |b>; a's ions occupy the low bits.
    static StateVector tensor(const StateVector &a, const StateVector &b);

    /// Basis states with probability above `cutoff`, as (index, probability).
    std::vector<std::pair<std::uint64_t, double>> outcome_distribution(double cutoff = 1e-14) const;

    /// |<this|other>|^2 for states over the same ion order.
    double fidelity(const StateVector &other) const;

  private:
    std::vector<int> ions_;
    std::vector<Amp> amp_;
};

/// Tensor product of independent clusters.
class ProductState {
  public:
    explicit ProductState(std::span<const int> ions);

    bool contains(int ion) const;
    int cluster_size(int ion) const;
    std::size_t max_cluster_qubits() const;

    void apply_rotation(int ion, double phi, double theta);
    void apply_rz(int ion, double theta);
    /// Merges the two clusters first if needed.
    void apply_xx(int ion_i, int ion_j, double theta);
    void apply_pauli(int ion, Pauli p);

    /// Measures and removes one ion.
    int measure(int ion, Rng &rng);

    /// Merged dense state over the given ions, in that order.
    StateVector to_state_vector(std::span<const int> order) const;

    /// Enumerates the joint Z-basis outcome distribution of all remaining
    /// ions as a product over clusters. Bits come back in `order`.
    std::vector<std::pair<std::vector<std::uint8_t>, double>> outcome_distribution(std::span<const int> order,
                                                                                   double cutoff = 1e-14) const;

  private:
    int cluster_of(int ion) const;
    void merge(int ca, int cb);

    std::vector<StateVector> clusters_;
    std::vector<int> owner_;  // owner_[ion] = cluster index or -1
};

}  // namespace bsec
