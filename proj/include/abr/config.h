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


#ifndef ABR_CONFIG_H_
#define ABR_CONFIG_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abr/anc.h"
#include "abr/evaluator.h"
#include "abr/game.h"
#include "abr/mlp.h"
#include "abr/policy.h"
#include "abr/search.h"
#include "json.hpp"

namespace abr {

// One experiment. Every field has a default except `game` and `seed`, which
// commands that need them must receive from the file or a flag.
struct ExperimentConfig {
  std::optional<GameId> game;
  std::optional<std::uint64_t> seed;
  // Policy source per seat of the target profile; see ResolvePolicy.
  std::array<std::string, 2> players = {"uniform", "uniform"};
  SearchConfig search;
  FAConfig fa;
  EvaluatorKind evaluator = EvaluatorKind::kTabular;
  AncProtocol protocol = AncProtocol::kExact;
  int sampled_games = 1000;

  // Training.
  std::vector<Player> seats = {0, 1};
  std::int64_t max_episodes = 1000;
  double max_seconds = 0;
  std::int64_t checkpoint_every = 100;
  int num_actors = 1;
  std::string output_dir = "abr_run";
  bool resume = false;

  // ABR checkpoint per exploiter seat, for abr-eval.
  std::array<std::string, 2> checkpoints;

  // Match. Agent sources are policy sources or "abr".
  std::string row = "uniform";
  std::string col = "uniform";
  int num_games = 1024;
  bool alternate_seats = true;

  // CFR+.
  int cfr_iterations = 1000;
  std::vector<int> cfr_checkpoints = {10, 100, 1000};

  std::string report_path;  // Empty prints the report to stdout only.

  nlohmann::json ToJson() const;
  // Strict: unknown keys and ill-typed values throw ConfigError.
  static ExperimentConfig FromJson(const nlohmann::json& j);
  // FNV-1a of the canonical JSON form.
  std::string Digest() const;

  GameId RequireGame() const;
  std::uint64_t RequireSeed() const;
};

ExperimentConfig LoadExperimentConfig(const std::string& path);

// Policy sources:
//   uniform                          uniform over legal actions
//   always_fold | always_call | uniform_random   chump rules
//   cfr:<iterations>                 CFR+ average policy
//   random:<seed>                    Dirichlet(1) tabular policy
//   perturb:<epsilon>:<seed>:<src>   perturbation of a tabular source
//   file:<path>                      policy file
// Throws ConfigError on malformed sources and load failures.
std::shared_ptr<const Policy> ResolvePolicy(const std::string& source,
                                            GameId game, Player seat);

// Build identifier embedded at compile time.
std::string BuildId();

}  // namespace abr

#endif  // ABR_CONFIG_H_
