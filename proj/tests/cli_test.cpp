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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace bsec {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    args.insert(args.begin(), "bsec");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name, const std::string &body) {
    const auto path = std::filesystem::temp_directory_path() / ("bsec_cli_test_" + name);
    std::ofstream(path) << body;
    return path;
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"run"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "nope", "--shots", "10"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "direct_prep", "--shots", "0"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "direct_prep", "--shots", "5", "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, ConfigErrors) {
    EXPECT_EQ(cli({"run", "direct_prep", "--config", "/nonexistent.json"}).code, kExitConfig);
    const auto bad = temp_file("bad.json", R"({"p_z": 7})");
    const Result r = cli({"run", "direct_prep", "--config", bad.string()});
    EXPECT_EQ(r.code, kExitConfig);
    EXPECT_NE(r.err.find("p_z"), std::string::npos);
}

TEST(Cli, RunPrintsTable) {
    const Result r = cli({"run", "direct_prep", "--shots", "100", "--seed", "3"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("direct_prep.ec,LER"), std::string::npos);
    EXPECT_EQ(r.out, cli({"run", "direct_prep", "--shots", "100", "--seed", "3"}).out);
}

TEST(Cli, DumpAndRedecode) {
    const auto dump = std::filesystem::temp_directory_path() / "bsec_cli_test_shots.jsonl";
    const Result live = cli({"run", "steane_plus", "--shots", "200", "--dump-shots", dump.string()});
    ASSERT_EQ(live.code, kExitOk) << live.err;
    const Result again = cli({"redecode", dump.string()});
    ASSERT_EQ(again.code, kExitOk) << again.err;
    // The dump header carries no metadata block, so compare the rows only.
    const auto rows = [](const std::string &s) { return s.substr(s.find("protocol,")); };
    EXPECT_EQ(rows(again.out), rows(live.out));
}

TEST(Cli, OracleExitCodes) {
    const Result prep = cli({"oracle", "prep"});
    EXPECT_EQ(prep.code, kExitOk);
    EXPECT_NE(prep.out.find("0 violation(s)"), std::string::npos);
    // Violations here are expected, so they do not fail the command.
    const Result ss = cli({"oracle", "shor_single_shot"});
    EXPECT_EQ(ss.code, kExitOk);
    EXPECT_EQ(ss.out.find(" 0 violation(s)"), std::string::npos);
    EXPECT_EQ(cli({"oracle", "unknown"}).code, kExitUsage);
}

TEST(Cli, DumpCircuit) {
    const Result r = cli({"dump-circuit", "direct_prep"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 19);  // 18 gates and the readout
    EXPECT_EQ(cli({"dump-circuit", "E1"}).code, kExitUsage);
}

TEST(Cli, CalibrateFit) {
    const auto csv = temp_file("fit.csv", "u,eps\n1e-5,0.0066\n2e-5,0.0132\n4e-5,0.0264\n");
    const Result r = cli({"calibrate-fit", csv.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("slope=660"), std::string::npos) << r.out;
    const auto ragged = temp_file("ragged.csv", "1,2\n1,2,3\n");
    EXPECT_EQ(cli({"calibrate-fit", ragged.string()}).code, kExitUsage);
}

}  // namespace
}  // namespace bsec
