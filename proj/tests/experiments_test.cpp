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

#include "bsec/experiments.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace bsec {
namespace {

RunSettings small(std::uint64_t shots, unsigned workers = 1) {
    RunSettings s;
    s.shots = shots;
    s.seed = 2024;
    s.workers = workers;
    return s;
}

TEST(Experiments, RegistryLookup) {
    EXPECT_EQ(find_experiment("shor").circuits.size(), 2u);
    EXPECT_FALSE(find_experiment("shor_s1only").headline);
    EXPECT_THROW(find_experiment("nope"), std::invalid_argument);
}

TEST(Experiments, NoiselessRunIsClean) {
    const ResultTable t = run_experiment("shor", NoiseParams::noiseless(), small(300));
    for (const char *mode : {"shor.single_shot", "shor.adaptive1", "shor.adaptive2"}) {
        EXPECT_EQ(t.at(mode, "LER", "SIM").value.point, 0.0) << mode;
    }
    EXPECT_EQ(t.at("shor.disturbance", "DSTB", "SIM").value.point, 0.0);
    EXPECT_EQ(t.at("shor.detection", "RR", "SIM").value.point, 0.0);
    EXPECT_DOUBLE_EQ(t.at("shor.E1", "mu", "SIM", "00").value.point, 1.0);
    // Strata never seen carry the empty marker, not a fabricated zero.
    EXPECT_TRUE(t.at("shor.E1", "lambda", "SIM", "11").value.empty());
}

TEST(Experiments, TablesIgnoreWorkerCount) {
    const NoiseParams p = NoiseParams::defaults();
    std::ostringstream a, b;
    write_csv(run_experiment("steane_plus", p, small(600, 1)), a);
    write_csv(run_experiment("steane_plus", p, small(600, 4)), b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Experiments, JsonRoundTrip) {
    const ResultTable t = run_experiment("shor", NoiseParams::defaults(), small(400));
    std::stringstream buf;
    write_json(t, buf);
    EXPECT_EQ(read_json(buf), t);
}

TEST(Experiments, CsvHeaderAndEmptyStrata) {
    const ResultTable t = run_experiment("direct_prep", NoiseParams::noiseless(), small(50));
    std::ostringstream out;
    write_csv(t, out);
    const std::string csv = out.str();
    EXPECT_NE(csv.find("protocol,metric,stratum,k,n,point,lo,hi,source"), std::string::npos);
    EXPECT_NE(csv.find("direct_prep.ec,LER,,0,50,"), std::string::npos);
}

TEST(Experiments, RedecodeReproducesTallies) {
    const NoiseParams p = NoiseParams::defaults();
    for (const char *id : {"shor", "steane_zero", "bell_xx"}) {
        std::stringstream dump;
        RunSettings s = small(500);
        s.dump = &dump;
        const ResultTable live = run_experiment(id, p, s);
        const ResultTable again = redecode(dump);
        EXPECT_EQ(again.rows, live.rows) << id;
    }
    std::istringstream junk("{\"format\":\"other\"}\n");
    EXPECT_THROW(redecode(junk), std::runtime_error);
}

TEST(Experiments, ImprovedRowsAreLabelled) {
    RunSettings s = small(200);
    s.improved = true;
    const ResultTable t = run_experiment("bell_zz", NoiseParams::defaults(), s);
    EXPECT_NE(t.find("bell_zz.ec", "LER", "IMP"), nullptr);
    EXPECT_EQ(t.find("bell_zz.ec", "LER", "SIM"), nullptr);
}

TEST(Oracle, PrepIsFaultTolerant) {
    const OracleReport r = run_ft_oracle("prep");
    EXPECT_GT(r.faults_checked, 100u);
    EXPECT_TRUE(r.clean());
}

TEST(Oracle, SingleShotShorIsNot) {
    const OracleReport r = run_ft_oracle("shor_single_shot");
    ASSERT_FALSE(r.clean());
    for (const auto &v : r.violations) {
        EXPECT_NE(v.gate_tag.find("shor:r1"), std::string::npos);
        for (const auto &f : v.fault.paulis) {
            if (f.ion <= 9) {
                EXPECT_GE(f.ion, 4);
                EXPECT_LE(f.ion, 6);
            }
        }
    }
    EXPECT_THROW(run_ft_oracle("made_up"), std::invalid_argument);
}

}  // namespace
}  // namespace bsec
