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

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace bsec {

/// A rate with a 95% (by default) interval. Counted estimates carry k and n;
/// derived estimates (combinations of other rates) have n == 0 and
/// derived == true. An empty stratum has n == 0, derived == false and a NaN
/// point: it is flagged rather than filled in.
struct EstimateCI {
    std::int64_t k = 0;
    std::int64_t n = 0;
    double point = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool derived = false;

    bool empty() const { return n == 0 && !derived; }
    /// k == 0: only the upper bound is informative.
    bool upper_bound_only() const { return n > 0 && k == 0; }

    /// Fixed value without an interval.
    static EstimateCI exact(double value);
    static EstimateCI empty_stratum();

    bool operator==(const EstimateCI &) const = default;
};

/// Clopper-Pearson interval. Throws std::invalid_argument unless
/// 0 <= k <= n and n >= 1.
EstimateCI estimate_ci(std::int64_t k, std::int64_t n, double level = 0.95);

/// Success counter that merges associatively.
struct Tally {
    std::int64_t k = 0;
    std::int64_t n = 0;

    void add(bool success) {
        k += success ? 1 : 0;
        ++n;
    }
    Tally &operator+=(const Tally &o) {
        k += o.k;
        n += o.n;
        return *this;
    }
    bool operator==(const Tally &) const = default;

    /// CI, or an empty-stratum marker when n == 0.
    EstimateCI estimate() const;
};

/// Per first-round syndrome statistics, indexed [r - 1][Syndrome::index()].
struct ConditionalTable {
    std::array<std::array<EstimateCI, 4>, 2> mu{};
    std::array<std::array<EstimateCI, 4>, 2> lambda{};
    std::array<std::array<EstimateCI, 4>, 2> delta{};
};

enum class CombineVariant { kSingleShot, kAdaptive1, kAdaptive2 };

std::string_view to_string(CombineVariant v);

/// Total LER from conditional rates:
///   ss: sum_s mu1(s) lambda1(s)
///   a1: mu1(00) lambda1(00) + sum_{s != 00} mu1(s) lambda2(s)
///   a2: mu1(00) lambda1(00) + mu1(10) lambda1(10) + mu1(11) lambda1(11) + mu1(01) lambda2(01)
/// The interval is a parametric bootstrap: mu1 is redrawn as a multinomial
/// and each lambda as a binomial with its own n. Entries with n == 0 stay
/// fixed. The result is marked derived.
EstimateCI combine_adaptive_ler(const ConditionalTable &table, CombineVariant variant, int resamples = 10000,
                                std::uint64_t seed = 0x5eedb007);

/// Point value of the combination formula only.
double combine_point(const ConditionalTable &table, CombineVariant variant);

/// True when the two intervals do not intersect.
bool disjoint(const EstimateCI &a, const EstimateCI &b);

}  // namespace bsec
