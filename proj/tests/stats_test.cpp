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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bsec/code_model.hpp"

namespace bsec {
namespace {

TEST(Estimate, ClopperPearsonEdges) {
    const EstimateCI zero = estimate_ci(0, 100);
    EXPECT_EQ(zero.lo, 0.0);
    // Upper limit solves (1 - p)^100 = 0.025.
    EXPECT_NEAR(zero.hi, 1.0 - std::pow(0.025, 0.01), 1e-12);
    EXPECT_TRUE(zero.upper_bound_only());

    const EstimateCI all = estimate_ci(100, 100);
    EXPECT_EQ(all.hi, 1.0);
    EXPECT_NEAR(all.lo, std::pow(0.025, 0.01), 1e-12);

    const EstimateCI mid = estimate_ci(13, 1000);
    EXPECT_DOUBLE_EQ(mid.point, 0.013);
    EXPECT_LT(mid.lo, 0.013);
    EXPECT_GT(mid.hi, 0.013);
    // Reference values for 13/1000 at 95%.
    EXPECT_NEAR(mid.lo, 0.0069396, 1e-6);
    EXPECT_NEAR(mid.hi, 0.0221278, 1e-6);
}

TEST(Estimate, RejectsBadInput) {
    EXPECT_THROW(estimate_ci(0, 0), std::invalid_argument);
    EXPECT_THROW(estimate_ci(5, 4), std::invalid_argument);
    EXPECT_THROW(estimate_ci(-1, 4), std::invalid_argument);
    EXPECT_THROW(estimate_ci(1, 4, 1.0), std::invalid_argument);
}

TEST(Estimate, EmptyStratumIsFlagged) {
    const EstimateCI e = Tally{}.estimate();
    EXPECT_TRUE(e.empty());
    EXPECT_TRUE(std::isnan(e.point));
    EXPECT_EQ(e.lo, 0.0);
    EXPECT_EQ(e.hi, 1.0);
}

TEST(Estimate, CoverageAtLeastNominal) {
    std::mt19937_64 rng(7);
    for (double p : {0.003, 0.05, 0.3}) {
        const int n = 400;
        int covered = 0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) {
            const auto k = std::binomial_distribution<std::int64_t>(n, p)(rng);
            const EstimateCI e = estimate_ci(k, n);
            covered += e.lo <= p && p <= e.hi;
        }
        EXPECT_GE(covered / double(trials), 0.95) << p;
    }
}

TEST(Estimate, Disjoint) {
    EXPECT_TRUE(disjoint(estimate_ci(10, 10000), estimate_ci(100, 10000)));
    EXPECT_FALSE(disjoint(estimate_ci(10, 1000), estimate_ci(12, 1000)));
}

// Measured first-round distribution and conditional error rates, stored in
// the column order 00, 10, 11, 01.
ConditionalTable measured_table() {
    const double mu1[4] = {0.6468, 0.1040, 0.0720, 0.1772};
    const double lam1[4] = {0.0130, 0.1423, 0.1611, 0.3521};
    const double lam2[4] = {0.1331, 0.2518, 0.3008, 0.2460};
    ConditionalTable t;
    for (int c = 0; c < 4; ++c) {
        const int s = kStrataOrder[c];
        t.mu[0][s] = EstimateCI::exact(mu1[c]);
        t.lambda[0][s] = EstimateCI::exact(lam1[c]);
        t.lambda[1][s] = EstimateCI::exact(lam2[c]);
    }
    return t;
}

TEST(Combine, HandArithmetic) {
    const ConditionalTable t = measured_table();
    // ss: sum mu1 lambda1. a2: round two only for s = 01. a1: round two
    // unless s = 00.
    EXPECT_NEAR(combine_point(t, CombineVariant::kSingleShot), 0.097199, 1e-6);
    EXPECT_NEAR(combine_point(t, CombineVariant::kAdaptive2), 0.078398, 1e-6);
    EXPECT_NEAR(combine_point(t, CombineVariant::kAdaptive1), 0.0998444, 1e-7);
}

TEST(Combine, ReproducesMeasuredTotals) {
    const ConditionalTable t = measured_table();
    EXPECT_NEAR(combine_adaptive_ler(t, CombineVariant::kSingleShot).point, 0.0972, 0.001);
    EXPECT_NEAR(combine_adaptive_ler(t, CombineVariant::kAdaptive2).point, 0.0784, 0.001);
    EXPECT_NEAR(combine_adaptive_ler(t, CombineVariant::kAdaptive1).point, 0.1004, 0.001);
}

TEST(Combine, BootstrapIntervalFromCounts) {
    ConditionalTable t;
    const std::int64_t n = 20000;
    const std::int64_t counts[4] = {13000, 2200, 1400, 3400};  // by index
    const std::int64_t errs1[4] = {120, 240, 300, 1100};
    const std::int64_t errs2[4] = {1300, 400, 420, 700};
    for (int s = 0; s < 4; ++s) {
        t.mu[0][s] = estimate_ci(counts[s], n);
        t.lambda[0][s] = estimate_ci(errs1[s], counts[s]);
        t.lambda[1][s] = estimate_ci(errs2[s], 14000);
    }
    const EstimateCI a = combine_adaptive_ler(t, CombineVariant::kAdaptive2, 4000);
    EXPECT_TRUE(a.derived);
    EXPECT_LT(a.lo, a.point);
    EXPECT_GT(a.hi, a.point);
    EXPECT_LT(a.hi - a.lo, 0.02);
    EXPECT_EQ(a, combine_adaptive_ler(t, CombineVariant::kAdaptive2, 4000));
    EXPECT_THROW(combine_adaptive_ler(t, CombineVariant::kAdaptive2, 0), std::invalid_argument);
}

TEST(Combine, UnobservedStratumContributesNothing) {
    ConditionalTable t = measured_table();
    t.mu[0][3] = EstimateCI::exact(0.0);
    t.lambda[0][3] = EstimateCI::empty_stratum();
    EXPECT_FALSE(std::isnan(combine_point(t, CombineVariant::kSingleShot)));
}

}  // namespace
}  // namespace bsec
