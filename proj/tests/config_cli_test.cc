// Copyright 2026 The ABR Evaluation Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <vector>

#include "abr/config.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace abr {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("abr_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult RunCli(const std::string& args) {
  const std::string command = std::string(ABR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  RunResult r;
  if (!pipe) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json WithoutTiming(const std::string& report) {
  json j = json::parse(report);
  j.erase("timing");
  return j;
}

TEST(ConfigTest, DefaultsRoundTrip) {
  const ExperimentConfig c;
  const ExperimentConfig back = ExperimentConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  EXPECT_EQ(back.Digest(), c.Digest());
  EXPECT_THROW(c.RequireGame(), ConfigError);
  EXPECT_THROW(c.RequireSeed(), ConfigError);
}

TEST(ConfigTest, StrictParsing) {
  EXPECT_THROW(ExperimentConfig::FromJson(json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::FromJson(json{{"search", {{"uct", 1}}}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::FromJson(json{{"seed", "seven"}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::FromJson(json{{"game", "chess"}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::FromJson(json{{"search", {{"num_simulations", 0}}}}),
               ConfigError);
  EXPECT_THROW(ExperimentConfig::FromJson(json{{"train", {{"seats", {2}}}}}), ConfigError);
  const ExperimentConfig c = ExperimentConfig::FromJson(
      json{{"game", "leduc_poker"}, {"seed", 5}, {"fa", {{"learning_rate", 1e-3}}}});
  EXPECT_EQ(c.RequireGame(), GameId::kLeducPoker);
  EXPECT_EQ(c.RequireSeed(), 5u);
  EXPECT_EQ(c.fa.learning_rate, 1e-3);
  EXPECT_EQ(c.fa.batch_size, FAConfig{}.batch_size);
  EXPECT_NE(c.Digest(), ExperimentConfig{}.Digest());
}

TEST(ConfigTest, LoadReportsInvalidJson) {
  const fs::path dir = TempDir("config");
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(LoadExperimentConfig((dir / "bad.json").string()), ConfigError);
  EXPECT_THROW(LoadExperimentConfig((dir / "missing.json").string()), ConfigError);
}

TEST(ConfigTest, ResolvePolicySources) {
  const GameId g = GameId::kKuhnPoker;
  EXPECT_EQ(ResolvePolicy("uniform", g, 0)->kind(), PolicyKind::kUniform);
  EXPECT_EQ(ResolvePolicy("always_call", g, 0)->kind(), PolicyKind::kFixedRule);
  EXPECT_EQ(ResolvePolicy("cfr:10", g, 1)->kind(), PolicyKind::kTabular);
  EXPECT_EQ(ResolvePolicy("random:3", g, 0)->kind(), PolicyKind::kTabular);
  EXPECT_EQ(ResolvePolicy("perturb:0.5:2:cfr:10", g, 0)->kind(), PolicyKind::kTabular);
  EXPECT_EQ(ResolvePolicy("perturb:0.1:2:uniform", g, 0)->kind(), PolicyKind::kTabular);
  for (const char* bad : {"nope", "cfr:", "cfr:x", "cfr:0", "random:-1", "file:",
                          "file:/nonexistent/policy.txt", "perturb:2:1:uniform",
                          "perturb:0.1:1:", "perturb:0.1:x:uniform"}) {
    EXPECT_THROW(ResolvePolicy(bad, g, 0), ConfigError) << bad;
  }
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli("games").exit_code, 0);
  EXPECT_EQ(RunCli("exact --game kuhn_poker --seed 1").exit_code, 0);
  EXPECT_EQ(RunCli("exact --game nope --seed 1").exit_code, 2);
  EXPECT_EQ(RunCli("exact --seed 1").exit_code, 2);
  EXPECT_EQ(RunCli("exact --game kuhn_poker --seed 1 --p1 cfr:x").exit_code, 2);
  EXPECT_EQ(RunCli("abr-eval --game connect_four --seed 1").exit_code, 2);
  EXPECT_NE(RunCli("no-such-command").exit_code, 0);
}

TEST(CliTest, ExactReportMatchesKnownValues) {
  const RunResult r = RunCli("exact --game kuhn_poker --seed 1");
  ASSERT_EQ(r.exit_code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "exact");
  EXPECT_EQ(j["game_id"], "kuhn_poker");
  EXPECT_NEAR(j["result"]["nashconv"].get<double>(), 11.0 / 12, 1e-12);
  EXPECT_TRUE(j.contains("config_digest"));
  EXPECT_TRUE(j.contains("build_id"));
  EXPECT_TRUE(j["timing"].contains("wall_seconds"));
}

TEST(CliTest, FlagsOverrideTheConfigFile) {
  const fs::path dir = TempDir("precedence");
  std::ofstream(dir / "c.json")
      << R"({"game": "leduc_poker", "seed": 3, "search": {"num_simulations": 100},
            "players": ["always_call", "uniform"]})";
  const std::string config = "--config " + (dir / "c.json").string();
  const json base = json::parse(RunCli("exact " + config).out);
  EXPECT_EQ(base["config"]["search"]["num_simulations"], 100);
  EXPECT_EQ(base["config"]["players"][0], "always_call");
  EXPECT_EQ(base["seed"], 3);
  const json over = json::parse(RunCli("exact " + config + " --seed 9 --p1 uniform").out);
  EXPECT_EQ(over["config"]["search"]["num_simulations"], 100);
  EXPECT_EQ(over["config"]["players"][0], "uniform");
  EXPECT_EQ(over["config"]["players"][1], "uniform");
  EXPECT_EQ(over["seed"], 9);
  EXPECT_EQ(over["config"]["game"], "leduc_poker");
  const json match = json::parse(
      RunCli("match " + config + " --num-simulations 50 --games 4").out);
  EXPECT_EQ(match["config"]["search"]["num_simulations"], 50);
  EXPECT_EQ(match["config"]["match"]["num_games"], 4);
  EXPECT_NE(over["config_digest"], base["config_digest"]);
}

TEST(CliTest, ReportsAreReproducible) {
  const fs::path dir = TempDir("repro");
  const std::string out = (dir / "run").string();
  const std::string common = "--game kuhn_poker --seed 4";
  const std::string sims = " --num-simulations 16";
  const std::vector<std::string> commands = {
      "cfr " + common + " --iterations 20 --output-dir " + out,
      "abr-train " + common + sims + " --episodes 30 --output-dir " + out,
      "abr-eval " + common + sims + " --output-dir " + out,
      "match " + common + sims + " --row cfr:20 --col uniform --games 64"};
  std::array<std::vector<json>, 2> reports;
  std::array<std::string, 2> checkpoint;
  for (int run : {0, 1}) {
    fs::remove_all(out);
    for (const std::string& command : commands) {
      const RunResult r = RunCli(command);
      ASSERT_EQ(r.exit_code, 0) << command;
      reports[run].push_back(WithoutTiming(r.out));
    }
    std::ifstream in(fs::path(out) / "seat0" / "checkpoint.txt");
    checkpoint[run] = std::string((std::istreambuf_iterator<char>(in)), {});
  }
  for (size_t i = 0; i < commands.size(); ++i) {
    EXPECT_EQ(reports[0][i], reports[1][i]) << commands[i];
  }
  EXPECT_FALSE(checkpoint[0].empty());
  EXPECT_EQ(checkpoint[0], checkpoint[1]);
  const json& eval = reports[0][2]["result"];
  EXPECT_LE(eval["anc"].get<double>(), eval["nashconv"].get<double>() + 1e-9);
}

}  // namespace
}  // namespace abr
