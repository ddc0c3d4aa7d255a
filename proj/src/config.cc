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


#include "abr/config.h"

#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "abr/cfr.h"
#include "abr/game_tree.h"

#ifndef ABR_BUILD_ID
#define ABR_BUILD_ID "unknown"
#endif

namespace abr {

using nlohmann::json;

namespace {

void CheckKeys(const json& j, const std::string& where,
               const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown config key '" + where + "." + key + "'");
    }
  }
}

template <typename T>
void Read(const json& j, const char* key, const std::string& where, T* out) {
  if (!j.contains(key)) return;
  try {
    *out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + where + "." + key + "' has the wrong type");
  }
}

}  // namespace

json ExperimentConfig::ToJson() const {
  json j;
  if (game) j["game"] = GameIdToString(*game);
  if (seed) j["seed"] = *seed;
  j["players"] = players;
  j["search"] = {{"num_simulations", search.num_simulations},
                 {"uct_c", search.uct_c},
                 {"virtual_loss", search.virtual_loss},
                 {"num_threads", search.num_threads},
                 {"temperature_moves", search.temperature_moves},
                 {"root_noise_alpha", search.root_noise_alpha},
                 {"root_noise_fraction", search.root_noise_fraction},
                 {"seed", search.seed}};
  j["fa"] = {{"num_layers", fa.num_layers},
             {"hidden_units", fa.hidden_units},
             {"learning_rate", fa.learning_rate},
             {"l2_coefficient", fa.l2_coefficient},
             {"batch_size", fa.batch_size},
             {"min_buffer_to_learn", fa.min_buffer_to_learn},
             {"actor_batch", fa.actor_batch},
             {"replay_capacity", fa.replay_capacity}};
  j["evaluator"] = EvaluatorKindToString(evaluator);
  j["protocol"] = AncProtocolToString(protocol);
  j["sampled_games"] = sampled_games;
  j["train"] = {{"seats", seats},
                {"max_episodes", max_episodes},
                {"max_seconds", max_seconds},
                {"checkpoint_every", checkpoint_every},
                {"num_actors", num_actors},
                {"output_dir", output_dir},
                {"resume", resume}};
  j["checkpoints"] = checkpoints;
  j["match"] = {{"row", row},
                {"col", col},
                {"num_games", num_games},
                {"alternate_seats", alternate_seats}};
  j["cfr"] = {{"iterations", cfr_iterations}, {"checkpoints", cfr_checkpoints}};
  j["report"] = report_path;
  return j;
}

ExperimentConfig ExperimentConfig::FromJson(const json& j) {
  CheckKeys(j, "config",
            {"game", "seed", "players", "search", "fa", "evaluator", "protocol",
             "sampled_games", "train", "checkpoints", "match", "cfr", "report"});
  ExperimentConfig c;
  if (j.contains("game")) {
    std::string g;
    Read(j, "game", "config", &g);
    c.game = GameIdFromString(g);
  }
  if (j.contains("seed")) {
    std::uint64_t s = 0;
    Read(j, "seed", "config", &s);
    c.seed = s;
  }
  Read(j, "players", "config", &c.players);
  bool search_seed_given = false;
  if (j.contains("search")) {
    const json& s = j["search"];
    CheckKeys(s, "search",
              {"num_simulations", "uct_c", "virtual_loss", "num_threads",
               "temperature_moves", "root_noise_alpha", "root_noise_fraction",
               "seed"});
    Read(s, "num_simulations", "search", &c.search.num_simulations);
    Read(s, "uct_c", "search", &c.search.uct_c);
    Read(s, "virtual_loss", "search", &c.search.virtual_loss);
    Read(s, "num_threads", "search", &c.search.num_threads);
    Read(s, "temperature_moves", "search", &c.search.temperature_moves);
    Read(s, "root_noise_alpha", "search", &c.search.root_noise_alpha);
    Read(s, "root_noise_fraction", "search", &c.search.root_noise_fraction);
    search_seed_given = s.contains("seed");
    Read(s, "seed", "search", &c.search.seed);
  }
  if (!search_seed_given && c.seed) c.search.seed = *c.seed;
  if (j.contains("fa")) {
    const json& f = j["fa"];
    CheckKeys(f, "fa",
              {"num_layers", "hidden_units", "learning_rate", "l2_coefficient",
               "batch_size", "min_buffer_to_learn", "actor_batch",
               "replay_capacity"});
    Read(f, "num_layers", "fa", &c.fa.num_layers);
    Read(f, "hidden_units", "fa", &c.fa.hidden_units);
    Read(f, "learning_rate", "fa", &c.fa.learning_rate);
    Read(f, "l2_coefficient", "fa", &c.fa.l2_coefficient);
    Read(f, "batch_size", "fa", &c.fa.batch_size);
    Read(f, "min_buffer_to_learn", "fa", &c.fa.min_buffer_to_learn);
    Read(f, "actor_batch", "fa", &c.fa.actor_batch);
    Read(f, "replay_capacity", "fa", &c.fa.replay_capacity);
  }
  if (j.contains("evaluator")) {
    std::string e;
    Read(j, "evaluator", "config", &e);
    c.evaluator = EvaluatorKindFromString(e);
  }
  if (j.contains("protocol")) {
    std::string p;
    Read(j, "protocol", "config", &p);
    c.protocol = AncProtocolFromString(p);
  }
  Read(j, "sampled_games", "config", &c.sampled_games);
  if (j.contains("train")) {
    const json& t = j["train"];
    CheckKeys(t, "train",
              {"seats", "max_episodes", "max_seconds", "checkpoint_every",
               "num_actors", "output_dir", "resume"});
    Read(t, "seats", "train", &c.seats);
    Read(t, "max_episodes", "train", &c.max_episodes);
    Read(t, "max_seconds", "train", &c.max_seconds);
    Read(t, "checkpoint_every", "train", &c.checkpoint_every);
    Read(t, "num_actors", "train", &c.num_actors);
    Read(t, "output_dir", "train", &c.output_dir);
    Read(t, "resume", "train", &c.resume);
    for (Player s : c.seats) {
      if (s != 0 && s != 1) throw ConfigError("train.seats entries must be 0 or 1");
    }
  }
  Read(j, "checkpoints", "config", &c.checkpoints);
  if (j.contains("match")) {
    const json& m = j["match"];
    CheckKeys(m, "match", {"row", "col", "num_games", "alternate_seats"});
    Read(m, "row", "match", &c.row);
    Read(m, "col", "match", &c.col);
    Read(m, "num_games", "match", &c.num_games);
    Read(m, "alternate_seats", "match", &c.alternate_seats);
  }
  if (j.contains("cfr")) {
    const json& f = j["cfr"];
    CheckKeys(f, "cfr", {"iterations", "checkpoints"});
    Read(f, "iterations", "cfr", &c.cfr_iterations);
    Read(f, "checkpoints", "cfr", &c.cfr_checkpoints);
  }
  Read(j, "report", "config", &c.report_path);
  c.search.Validate();
  if (c.sampled_games < 2) throw ConfigError("sampled_games must be >= 2");
  if (c.num_games < 1) throw ConfigError("match.num_games must be >= 1");
  if (c.cfr_iterations < 1) throw ConfigError("cfr.iterations must be >= 1");
  return c;
}

std::string ExperimentConfig::Digest() const {
  return HexDigest(Fnv1a64(ToJson().dump()));
}

GameId ExperimentConfig::RequireGame() const {
  if (!game) throw ConfigError("no game given (config 'game' or --game)");
  return *game;
}

std::uint64_t ExperimentConfig::RequireSeed() const {
  if (!seed) throw ConfigError("no seed given (config 'seed' or --seed)");
  return *seed;
}

ExperimentConfig LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  return ExperimentConfig::FromJson(j);
}

namespace {

std::array<std::shared_ptr<const TabularPolicy>, 2> CachedCfr(GameId game,
                                                               int iterations) {
  static std::mutex mu;
  static std::map<std::pair<GameId, int>,
                  std::array<std::shared_ptr<const TabularPolicy>, 2>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({game, iterations});
  if (it != cache.end()) return it->second;
  CfrPlusSolver solver(CachedGameTree(game));
  solver.Run(iterations);
  return cache[{game, iterations}] = solver.AveragePolicy();
}

int ParsePositiveInt(const std::string& s, const std::string& source) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < 1) {
    throw ConfigError("bad number '" + s + "' in policy source '" + source + "'");
  }
  return v;
}

}  // namespace

std::shared_ptr<const Policy> ResolvePolicy(const std::string& source,
                                            GameId game, Player seat) {
  if (source == "uniform") return std::make_shared<UniformPolicy>();
  if (source == "always_fold" || source == "always_call" ||
      source == "uniform_random") {
    return MakeChump(ChumpRuleFromString(source), game);
  }
  const size_t colon = source.find(':');
  const std::string kind = source.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : source.substr(colon + 1);
  if (kind == "cfr") {
    return CachedCfr(game, ParsePositiveInt(rest, source))[seat];
  }
  if (kind == "random") {
    return RandomTabularPolicy(game, seat, ParsePositiveInt(rest, source));
  }
  if (kind == "file") {
    if (rest.empty()) throw ConfigError("policy source 'file:' needs a path");
    return LoadPolicy(rest, game);
  }
  if (kind == "perturb") {
    std::stringstream in(rest);
    std::string eps, seed_text;
    std::getline(in, eps, ':');
    std::getline(in, seed_text, ':');
    std::string inner;
    std::getline(in, inner);
    double epsilon = -1;
    try {
      epsilon = std::stod(eps);
    } catch (const std::exception&) {
    }
    if (!(epsilon >= 0 && epsilon <= 1) || inner.empty()) {
      throw ConfigError("policy source '" + source +
                        "' must be perturb:<epsilon in [0,1]>:<seed>:<source>");
    }
    const auto base = ResolvePolicy(inner, game, seat);
    const auto* tabular = dynamic_cast<const TabularPolicy*>(base.get());
    std::shared_ptr<const TabularPolicy> table =
        tabular ? std::shared_ptr<const TabularPolicy>(base, tabular)
                : ToTabular(*base, game, seat);
    return Perturb(*table, epsilon, ParsePositiveInt(seed_text, source));
  }
  throw ConfigError(
      "unknown policy source '" + source +
      "' (uniform, always_fold, always_call, uniform_random, cfr:N, "
      "random:SEED, perturb:EPS:SEED:SRC, file:PATH)");
}

std::string BuildId() { return ABR_BUILD_ID; }

}  // namespace abr
