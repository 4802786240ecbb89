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

#include "bsec/config.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace bsec {
namespace {

using nlohmann::json;

bool defaulted(const LoadedConfig &c, const std::string &key) {
    return std::find(c.defaulted.begin(), c.defaulted.end(), key) != c.defaulted.end();
}

TEST(Config, MinimalDocumentFillsDefaults) {
    const LoadedConfig c = parse_config(json::parse(R"({"n_bar0": 660, "n_dot_per_ms": 180, "p_z": 0.01, "p_x": 0.004})"));
    EXPECT_DOUBLE_EQ(c.params.n_bar0, 660.0);
    EXPECT_DOUBLE_EQ(c.params.n_dot_per_us, 0.18);
    EXPECT_DOUBLE_EQ(c.params.p_z.uniform_value(), 0.01);
    EXPECT_DOUBLE_EQ(c.params.p_x.uniform_value(), 0.004);
    EXPECT_EQ(c.params.u.size(), 18u);
    EXPECT_TRUE(defaulted(c, "u"));
    EXPECT_TRUE(defaulted(c, "gamma_deph_per_us"));
    EXPECT_FALSE(defaulted(c, "p_z"));
}

TEST(Config, EmptyDocumentIsTheDefault) {
    EXPECT_EQ(config_hash(parse_config(json::object()).params), config_hash(NoiseParams::defaults()));
}

TEST(Config, ShippedDefaultLoads) {
    const LoadedConfig c = load_config(std::string(BSEC_CONFIG_DIR) + "/default.json");
    EXPECT_DOUBLE_EQ(c.params.n_bar0, 660.0);
    EXPECT_DOUBLE_EQ(c.params.n_dot_per_us, 0.18);
    EXPECT_TRUE(c.params.p_z.is_uniform());
    EXPECT_TRUE(c.params.p_x.is_uniform());
    EXPECT_TRUE(c.defaulted.empty()) << "the shipped config should spell out every key";
    EXPECT_EQ(config_hash(parse_config(to_json(c.params)).params), config_hash(c.params));
}

TEST(Config, RoundTrip) {
    NoiseParams p = NoiseParams::defaults();
    std::vector<std::vector<double>> m(18, std::vector<double>(18, 0.002));
    m[0][1] = m[1][0] = 0.02;
    p.p_z = PairTable::from_matrix(m);
    p.durations.xx_us = 123.0;
    p.cooling_reset = true;
    const LoadedConfig back = parse_config(to_json(p));
    EXPECT_EQ(to_json(back.params), to_json(p));
    EXPECT_EQ(config_hash(back.params), config_hash(p));
    EXPECT_DOUBLE_EQ(back.params.p_z.at(1, 2), 0.02);
    EXPECT_NE(config_hash(p), config_hash(NoiseParams::defaults()));
}

TEST(Config, ParticipationToCoupling) {
    const LoadedConfig c = parse_config(json{{"b_squared", std::vector<double>(18, 1.0 / 23.0)}});
    EXPECT_DOUBLE_EQ(c.params.u_of(5), default_motional_coupling());
    EXPECT_NEAR(default_motional_coupling(), 7.3e-5, 0.1e-5);
}

class ConfigErrors : public ::testing::TestWithParam<const char *> {};

TEST_P(ConfigErrors, Rejected) { EXPECT_THROW(parse_config(json::parse(GetParam())), ConfigError); }

INSTANTIATE_TEST_SUITE_P(
    Bad, ConfigErrors,
    ::testing::Values(R"([])", R"({"p_z": 1.5})", R"({"p_z": "high"})", R"({"p_x": -0.1})", R"({"typo": 1})",
                      R"({"u": [1e-5, 1e-5]})", R"({"u": [], "b_squared": []})", R"({"n_bar0": -3})",
                      R"({"durations": {"xx": 100}})", R"({"durations": {"sq_segments": 2.5}})",
                      R"({"durations": {"xx_us": 0}})", R"({"crosstalk": {"enabled": true}})",
                      R"({"crosstalk": {"enabled": 1}})", R"({"cooling_reset": "yes"})",
                      R"({"p_z": [[0.1, 0.2], [0.3, 0.1]]})"));

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/bsec.json"), ConfigError); }

}  // namespace
}  // namespace bsec
