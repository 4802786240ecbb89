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

#include "bsec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "bsec/types.hpp"

namespace bsec {

EstimateCI EstimateCI::exact(double value) {
    EstimateCI e;
    e.point = e.lo = e.hi = value;
    e.derived = true;
    return e;
}

EstimateCI EstimateCI::empty_stratum() {
    EstimateCI e;
    e.point = std::numeric_limits<double>::quiet_NaN();
    e.lo = 0.0;
    e.hi = 1.0;
    return e;
}

EstimateCI estimate_ci(std::int64_t k, std::int64_t n, double level) {
    if (n < 1 || k < 0 || k > n) {
        throw std::invalid_argument("estimate_ci needs 0 <= k <= n and n >= 1 (k=" + std::to_string(k) +
                                    ", n=" + std::to_string(n) + ")");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0,1)");
    }
    const double alpha = 1.0 - level;
    const double kd = static_cast<double>(k), nd = static_cast<double>(n);
    EstimateCI e;
    e.k = k;
    e.n = n;
    e.point = kd / nd;
    e.lo = k == 0 ? 0.0 : boost::math::ibeta_inv(kd, nd - kd + 1.0, alpha / 2);
    e.hi = k == n ? 1.0 : boost::math::ibeta_inv(kd + 1.0, nd - kd, 1.0 - alpha / 2);
    return e;
}

EstimateCI Tally::estimate() const { return n == 0 ? EstimateCI::empty_stratum() : estimate_ci(k, n); }

std::string_view to_string(CombineVariant v) {
    switch (v) {
        case CombineVariant::kSingleShot:
            return "ss";
        case CombineVariant::kAdaptive1:
            return "a1";
        case CombineVariant::kAdaptive2:
            return "a2";
    }
    return "?";
}

namespace {

// Which round's lambda each stratum uses (1 or 2), indexed by Syndrome::index().
std::array<int, 4> rounds_for(CombineVariant v) {
    switch (v) {
        case CombineVariant::kSingleShot:
            return {1, 1, 1, 1};
        case CombineVariant::kAdaptive1:
            return {1, 2, 2, 2};
        case CombineVariant::kAdaptive2:
            return {1, 1, 2, 1};  // index 2 is s = 01
    }
    return {1, 1, 1, 1};
}

double combine(const std::array<double, 4> &mu, const std::array<std::array<double, 4>, 2> &lambda,
               const std::array<int, 4> &rounds) {
    double total = 0.0;
    for (int s = 0; s < 4; ++s) {
        if (mu[s] == 0.0) {
            continue;  // an unobserved stratum contributes nothing
        }
        total += mu[s] * lambda[rounds[s] - 1][s];
    }
    return total;
}

}  // namespace

double combine_point(const ConditionalTable &table, CombineVariant variant) {
    std::array<double, 4> mu{};
    std::array<std::array<double, 4>, 2> lambda{};
    for (int s = 0; s < 4; ++s) {
        mu[s] = table.mu[0][s].point;
        lambda[0][s] = table.lambda[0][s].point;
        lambda[1][s] = table.lambda[1][s].point;
    }
    return combine(mu, lambda, rounds_for(variant));
}

EstimateCI combine_adaptive_ler(const ConditionalTable &table, CombineVariant variant, int resamples,
                                std::uint64_t seed) {
    if (resamples < 1) {
        throw std::invalid_argument("combine_adaptive_ler needs at least one resample");
    }
    const auto rounds = rounds_for(variant);
    EstimateCI out;
    out.derived = true;
    out.point = combine_point(table, variant);
    if (std::isnan(out.point)) {
        out.lo = 0.0;
        out.hi = 1.0;
        return out;
    }

    // The multinomial for mu1 is only redrawn when every stratum is counted
    // from one common population.
    std::int64_t mu_n = 0;
    bool mu_counted = true;
    for (int s = 0; s < 4; ++s) {
        const auto &m = table.mu[0][s];
        mu_counted = mu_counted && m.n > 0 && (s == 0 || m.n == table.mu[0][0].n);
        mu_n = m.n;
    }

    Rng rng(seed ^ (static_cast<std::uint64_t>(variant) + 1) * 0x9E3779B97F4A7C15ull);
    std::vector<double> samples;
    samples.reserve(resamples);
    std::array<double, 4> mu{};
    std::array<std::array<double, 4>, 2> lambda{};
    for (int b = 0; b < resamples; ++b) {
        if (mu_counted) {
            std::int64_t left = mu_n;
            double p_left = 1.0;
            for (int s = 0; s < 4; ++s) {
                const double p = table.mu[0][s].point;
                std::int64_t draw = left;
                if (s < 3) {
                    const double q = p_left > 0.0 ? std::clamp(p / p_left, 0.0, 1.0) : 0.0;
                    draw = std::binomial_distribution<std::int64_t>(left, q)(rng);
                }
                mu[s] = static_cast<double>(draw) / static_cast<double>(mu_n);
                left -= draw;
                p_left -= p;
            }
        } else {
            for (int s = 0; s < 4; ++s) {
                mu[s] = table.mu[0][s].point;
            }
        }
        for (int r = 0; r < 2; ++r) {
            for (int s = 0; s < 4; ++s) {
                const auto &l = table.lambda[r][s];
                if (l.n > 0) {
                    lambda[r][s] = static_cast<double>(std::binomial_distribution<std::int64_t>(l.n, l.point)(rng)) /
                                   static_cast<double>(l.n);
                } else {
                    lambda[r][s] = l.point;
                }
            }
        }
        const double v = combine(mu, lambda, rounds);
        // A redrawn stratum can appear whose lambda was never observed.
        samples.push_back(std::isnan(v) ? out.point : v);
    }
    std::sort(samples.begin(), samples.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(samples.size() - 1);
        const std::size_t i = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        return i + 1 < samples.size() ? samples[i] * (1 - frac) + samples[i + 1] * frac : samples[i];
    };
    out.lo = std::min(out.point, quantile(0.025));
    out.hi = std::max(out.point, quantile(0.975));
    return out;
}

bool disjoint(const EstimateCI &a, const EstimateCI &b) { return a.hi < b.lo || b.hi < a.lo; }

}  // namespace bsec
