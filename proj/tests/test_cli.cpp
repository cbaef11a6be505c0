// Copyright 2026 The romlift Authors
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

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct Result {
    int exit = -1;
    std::string out;
};

Result run(const std::string &args) {
    const std::string cmd = std::string(ROMLIFT_CLI_PATH) + " " + args + " 2>/dev/null";
    Result r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(p);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const std::string &name) {
    return std::string(ROMLIFT_SAMPLES_DIR) + "/" + name;
}

std::string temp_file(const std::string &name, const std::string &text) {
    const auto path = std::filesystem::temp_directory_path() / ("romlift_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").exit, 2);
    EXPECT_EQ(run("verify --no-such-flag").exit, 2);
    EXPECT_EQ(run("verify --mode sampled --seed 1").exit, 2);
    EXPECT_EQ(run("run --game Nope").exit, 2);
    EXPECT_EQ(run("run --game PRGg").exit, 2);
}

TEST(Cli, MalformedCircuitIsParseError) {
    const auto path = temp_file("bad.json", "{\n\"n\": 1,\n");
    EXPECT_EQ(run("lift --prg id --distinguisher " + path).exit, 2);
}

TEST(Cli, BudgetExceeded) {
    EXPECT_EQ(run("lift --prg id --distinguisher a_par --budget 4").exit, 3);
}

TEST(Cli, VerifyLiftSuitePasses) {
    const auto r = run("verify --suite lift");
    EXPECT_EQ(r.exit, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_TRUE(doc["pass"].get<bool>());
    EXPECT_EQ(doc["criteria"].size(), 1u);
}

TEST(Cli, VerifyIsByteIdentical) {
    const auto a = run("verify --suite lift");
    const auto b = run("verify --suite lift");
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PseudodetDeutschFailsStandardBudget) {
    EXPECT_EQ(run("pseudodet --alg deutsch --check-critical-set").exit, 1);
    EXPECT_EQ(run("pseudodet --alg query0").exit, 0);
}

TEST(Cli, PseudodetOnOracleFile) {
    const auto r = run("pseudodet --alg " + sample("query0.json") + " --oracle " + sample("oracle_swap.txt"));
    EXPECT_EQ(r.exit, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["rows"].size(), 1u);
}

TEST(Cli, RunFixedOutputGame) {
    const auto r = run("run --game PRGg --prg id --distinguisher a_par --g 00");
    ASSERT_EQ(r.exit, 0);
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["game"], "PRGg");
    EXPECT_NEAR(doc["distribution"]["1"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, RunWithSampleCircuit) {
    const auto r = run("run --game PRG --prg id --distinguisher " + sample("a_par.json"));
    ASSERT_EQ(r.exit, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["distribution"]["1"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, SampledModeNeedsSeed) {
    EXPECT_EQ(run("run --game PRG --mode sampled").exit, 2);
    const auto a = run("run --game PRG --mode sampled --seed 3 --trials 500");
    const auto b = run("run --game PRG --mode sampled --seed 3 --trials 500");
    EXPECT_EQ(a.exit, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, LiftReportKeys) {
    const auto r = run("lift --prg id --distinguisher a_par --eps auto");
    ASSERT_EQ(r.exit, 0);
    const auto doc = nlohmann::json::parse(r.out);
    for (const char *key : {"version", "config", "provenance", "result", "pass"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_NEAR(doc["result"]["adv_B"].get<double>(), 0.625, 1e-12);
}

TEST(Cli, TableFormat) {
    const auto r = run("lift --prg id --distinguisher a_par --format table");
    ASSERT_EQ(r.exit, 0);
    EXPECT_NE(r.out.find("adv_B"), std::string::npos);
    EXPECT_NE(r.out.find("[rows]"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
    const auto conf = temp_file("lift.conf", "prg = id\ndistinguisher = a_par\nformat = table\n");
    const auto table = run("lift --config " + conf);
    EXPECT_EQ(table.exit, 0);
    EXPECT_NE(table.out.find("adv_B"), std::string::npos);
    const auto json = run("lift --config " + conf + " --format json");
    EXPECT_EQ(json.exit, 0);
    EXPECT_TRUE(nlohmann::json::parse(json.out).is_object());
}

TEST(Cli, OutFileWritten) {
    const auto path = (std::filesystem::temp_directory_path() / "romlift_cli_out.json").string();
    std::filesystem::remove(path);
    const auto r = run("lift --prg const --distinguisher a_const --out " + path);
    EXPECT_EQ(r.exit, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    EXPECT_TRUE(nlohmann::json::parse(in)["pass"].get<bool>());
}

}  // namespace
