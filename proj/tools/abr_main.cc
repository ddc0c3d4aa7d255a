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


// Command-line entry point: exact, cfr, abr-train, abr-eval, match, games,
// belief. Exit codes: 0 success, 1 invariant failure, 2 configuration error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "abr/anc.h"
#include "abr/beliefs.h"
#include "abr/cfr.h"
#include "abr/config.h"
#include "abr/exact_eval.h"
#include "abr/game_tree.h"
#include "abr/match.h"
#include "abr/training.h"
#include "json.hpp"

namespace abr {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

// Flag values that override config-file fields; unset flags leave the file
// (or the built-in default) in force.
struct Overrides {
  std::string config_path;
  std::string game;
  std::string seed;
  std::string p1, p2;
  std::string report;
  std::string evaluator;
  std::string protocol;
  std::string output_dir;
  std::string checkpoint0, checkpoint1;
  std::string row, col;
  int num_simulations = 0;
  long max_episodes = 0;
  double max_seconds = -1;
  int num_actors = 0;
  int num_games = 0;
  int sampled_games = 0;
  int iterations = 0;
  std::string seats;
  bool resume = false;
  bool no_alternate = false;
  std::string key;
};

ExperimentConfig Resolve(const Overrides& o) {
  json j = json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("cannot open config " + o.config_path);
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError(o.config_path + ": invalid JSON: " + e.what());
    }
  }
  if (!o.game.empty()) j["game"] = o.game;
  if (!o.seed.empty()) {
    try {
      size_t used = 0;
      j["seed"] = std::stoull(o.seed, &used);
      if (used != o.seed.size()) throw std::invalid_argument("seed");
    } catch (const std::exception&) {
      throw ConfigError("--seed must be a non-negative integer");
    }
  }
  if (!o.p1.empty() || !o.p2.empty()) {
    json players = j.value("players", json::array({"uniform", "uniform"}));
    if (!players.is_array() || players.size() != 2) {
      throw ConfigError("config 'players' must list two policy sources");
    }
    if (!o.p1.empty()) players[0] = o.p1;
    if (!o.p2.empty()) players[1] = o.p2;
    j["players"] = players;
  }
  if (!o.report.empty()) j["report"] = o.report;
  if (!o.evaluator.empty()) j["evaluator"] = o.evaluator;
  if (!o.protocol.empty()) j["protocol"] = o.protocol;
  if (o.sampled_games) j["sampled_games"] = o.sampled_games;
  if (o.num_simulations) j["search"]["num_simulations"] = o.num_simulations;
  if (!o.output_dir.empty()) j["train"]["output_dir"] = o.output_dir;
  if (o.max_episodes) j["train"]["max_episodes"] = o.max_episodes;
  if (o.max_seconds >= 0) j["train"]["max_seconds"] = o.max_seconds;
  if (o.num_actors) j["train"]["num_actors"] = o.num_actors;
  if (o.resume) j["train"]["resume"] = true;
  if (!o.seats.empty()) {
    json seats = json::array();
    for (char c : o.seats) {
      if (c == '0' || c == '1') seats.push_back(c - '0');
      else if (c != ',') throw ConfigError("--seats takes 0, 1 or 0,1");
    }
    j["train"]["seats"] = seats;
  }
  if (!o.checkpoint0.empty() || !o.checkpoint1.empty()) {
    json ck = j.value("checkpoints", json::array({"", ""}));
    if (!o.checkpoint0.empty()) ck[0] = o.checkpoint0;
    if (!o.checkpoint1.empty()) ck[1] = o.checkpoint1;
    j["checkpoints"] = ck;
  }
  if (!o.row.empty()) j["match"]["row"] = o.row;
  if (!o.col.empty()) j["match"]["col"] = o.col;
  if (o.num_games) j["match"]["num_games"] = o.num_games;
  if (o.no_alternate) j["match"]["alternate_seats"] = false;
  if (o.iterations) j["cfr"]["iterations"] = o.iterations;
  return ExperimentConfig::FromJson(j);
}

class Report {
 public:
  Report(std::string command, const ExperimentConfig& config)
      : command_(std::move(command)),
        config_(config),
        start_(std::chrono::steady_clock::now()) {}

  json& result() { return result_; }
  json& timing() { return timing_; }

  void Emit() {
    json out;
    out["command"] = command_;
    if (config_.game) out["game_id"] = GameIdToString(*config_.game);
    if (config_.seed) out["seed"] = *config_.seed;
    out["config_digest"] = config_.Digest();
    out["config"] = config_.ToJson();
    out["build_id"] = BuildId();
    out["result"] = result_;
    timing_["wall_seconds"] = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - start_)
                                  .count();
    out["timing"] = timing_;
    const std::string text = out.dump(2) + "\n";
    std::cout << text;
    if (!config_.report_path.empty()) {
      const fs::path parent = fs::path(config_.report_path).parent_path();
      if (!parent.empty()) fs::create_directories(parent);
      std::ofstream f(config_.report_path, std::ios::binary);
      if (!f) throw ConfigError("cannot write report " + config_.report_path);
      f << text;
    }
  }

 private:
  std::string command_;
  const ExperimentConfig& config_;
  std::chrono::steady_clock::time_point start_;
  json result_ = json::object();
  json timing_ = json::object();
};

std::shared_ptr<const GameTree> TraversableTree(GameId game) {
  if (game == GameId::kConnectFour) return nullptr;
  return CachedGameTree(game);
}

json Diagnostics(const SearchDiagnostics& d) {
  return {{"simulations", d.simulations},
          {"expansions", d.expansions},
          {"degenerate_beliefs", d.degenerate_beliefs},
          {"max_tree_size", d.max_tree_size}};
}

// Digest of the canonical policy file of the tabulated policy.
std::string PolicyDigest(const Policy& policy, GameId game, Player seat) {
  const auto table = ToTabular(policy, game, seat);
  return HexDigest(Fnv1a64(SerializePolicy(*table, game, seat)));
}

int CmdExact(const ExperimentConfig& c) {
  Report report("exact", c);
  const GameId game = c.RequireGame();
  const auto tree = TraversableTree(game);
  if (!tree) throw ConfigError(GameIdToString(game) + " is too large to traverse");
  const auto pi0 = ResolvePolicy(c.players[0], game, 0);
  const auto pi1 = ResolvePolicy(c.players[1], game, 1);
  const ExploitabilityReport r = NashConv(*tree, *pi0, *pi1);
  const std::array<double, 2> v = ExpectedValue(*tree, *pi0, *pi1);
  json& out = report.result();
  out["per_player_br_values"] = r.per_player_br_values;
  out["nashconv"] = r.nashconv;
  out["exploitability"] = r.exploitability;
  out["profile_values"] = v;
  out["delta"] = {r.per_player_br_values[0] - v[0], r.per_player_br_values[1] - v[1]};
  out["policy_digests"] = {PolicyDigest(*pi0, game, 0), PolicyDigest(*pi1, game, 1)};
  out["policy_misses"] = {pi0->miss_count(), pi1->miss_count()};
  if (c.players[0] == c.players[1] && c.players[0].rfind("cfr:", 0) == 0) {
    out["game_value_estimate"] = v[0];
  } else {
    out["game_value_estimate"] = nullptr;
  }
  if (r.nashconv < -1e-9) {
    report.Emit();
    std::fprintf(stderr, "invariant failure: negative NashConv %.3g\n", r.nashconv);
    return kExitInvariant;
  }
  report.Emit();
  std::fprintf(stderr, "NashConv %.6f  delta_0 %.6f  delta_1 %.6f\n", r.nashconv,
               r.per_player_br_values[0] - v[0], r.per_player_br_values[1] - v[1]);
  return 0;
}

int CmdCfr(const ExperimentConfig& c) {
  Report report("cfr", c);
  const GameId game = c.RequireGame();
  const auto tree = TraversableTree(game);
  if (!tree) throw ConfigError(GameIdToString(game) + " is too large to traverse");
  CfrPlusSolver solver(tree);
  json points = json::array();
  std::vector<int> marks = c.cfr_checkpoints;
  marks.push_back(c.cfr_iterations);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  fs::create_directories(c.output_dir);
  for (int mark : marks) {
    if (mark > c.cfr_iterations) break;
    solver.Run(mark - solver.iteration());
    const auto avg = solver.AverageStrategy();
    const ExploitabilityReport r = NashConv(*tree, avg[0], avg[1]);
    points.push_back({{"iteration", mark},
                      {"nashconv", r.nashconv},
                      {"exploitability", r.exploitability}});
  }
  const auto policies = solver.AveragePolicy();
  json files = json::array();
  for (Player p : {0, 1}) {
    const fs::path path = fs::path(c.output_dir) /
                          ("cfr" + std::to_string(c.cfr_iterations) + "_p" +
                           std::to_string(p) + ".policy");
    SavePolicy(*policies[p], game, p, path.string());
    files.push_back(path.string());
  }
  report.result()["checkpoints"] = points;
  report.result()["policy_files"] = files;
  report.result()["game_value_estimate"] =
      ExpectedValue(*tree, *policies[0], *policies[1])[0];
  report.Emit();
  return 0;
}

std::string SeatDir(const ExperimentConfig& c, Player seat) {
  return (fs::path(c.output_dir) / ("seat" + std::to_string(seat))).string();
}

int CmdAbrTrain(const ExperimentConfig& c) {
  Report report("abr-train", c);
  const GameId game_id = c.RequireGame();
  const std::uint64_t seed = c.RequireSeed();
  const auto game = LoadGame(game_id);
  json seats = json::array();
  SearchDiagnostics total;
  double search_seconds = 0;
  for (Player seat : c.seats) {
    TrainConfig tc;
    tc.seat = seat;
    tc.evaluator = c.evaluator;
    tc.max_episodes = c.max_episodes;
    tc.max_seconds = c.max_seconds;
    tc.checkpoint_every = c.checkpoint_every;
    tc.checkpoint_dir = SeatDir(c, seat);
    tc.num_actors = c.num_actors;
    tc.search = c.search;
    tc.fa = c.fa;
    tc.seed = MixSeed(seed, static_cast<std::uint64_t>(seat));
    if (c.resume) {
      tc.resume_from = (fs::path(tc.checkpoint_dir) / "checkpoint.txt").string();
    }
    const auto opponent = ResolvePolicy(c.players[1 - seat], game_id, 1 - seat);
    const TrainResult r = TrainAbr(game, opponent, tc);
    json curve = json::array();
    for (const CurvePoint& p : r.curve) {
      curve.push_back({{"step", p.step}, {"mean_return", p.mean_return}});
    }
    seats.push_back({{"seat", seat},
                     {"opponent", c.players[1 - seat]},
                     {"checkpoint", tc.checkpoint_dir + "/checkpoint.txt"},
                     {"curve_file", tc.checkpoint_dir + "/curve.csv"},
                     {"episodes_total", r.checkpoint.step},
                     {"learner_steps", r.checkpoint.learner_steps},
                     {"curve", curve},
                     {"diagnostics", Diagnostics(r.diagnostics)}});
    total.simulations += r.diagnostics.simulations;
    search_seconds += r.diagnostics.search_seconds;
  }
  report.result()["seats"] = seats;
  if (search_seconds > 0) {
    report.timing()["simulations_per_second"] = total.simulations / search_seconds;
  }
  report.Emit();
  return 0;
}

std::array<std::shared_ptr<const AbrSearcher>, 2> LoadSearchers(
    const ExperimentConfig& c, GameId game_id,
    const std::array<std::shared_ptr<const Policy>, 2>& opponents) {
  const auto game = LoadGame(game_id);
  std::array<std::shared_ptr<const AbrSearcher>, 2> out;
  for (Player seat : {0, 1}) {
    if (!opponents[seat]) continue;
    std::string path = c.checkpoints[seat];
    if (path.empty()) path = SeatDir(c, seat) + "/checkpoint.txt";
    const Checkpoint ck = LoadCheckpoint(path, game_id);
    if (ck.seat != seat) {
      throw ConfigError(path + " was trained for seat " + std::to_string(ck.seat));
    }
    out[seat] = std::make_shared<AbrSearcher>(game, seat, opponents[seat],
                                              ck.MakeEvaluator(), c.search);
  }
  return out;
}

int CmdAbrEval(const ExperimentConfig& c) {
  Report report("abr-eval", c);
  const GameId game = c.RequireGame();
  const std::uint64_t seed = c.RequireSeed();
  const auto tree = TraversableTree(game);
  if (c.protocol == AncProtocol::kExact && !tree) {
    throw ConfigError("exact protocol impossible: " + GameIdToString(game) +
                      " is too large to enumerate; use --protocol sampled");
  }
  const auto searchers = LoadSearchers(
      c, game, {ResolvePolicy(c.players[1], game, 1), ResolvePolicy(c.players[0], game, 0)});
  const AncReport r =
      ComputeAnc(tree.get(), searchers, c.protocol, c.sampled_games, seed);
  json& out = report.result();
  out["protocol"] = AncProtocolToString(r.protocol);
  out["evaluator"] = EvaluatorKindToString(searchers[0]->evaluator()->kind());
  out["anc"] = r.anc;
  out["ci95"] = r.ci95 ? json(*r.ci95) : json(nullptr);
  out["nashconv"] = r.nashconv ? json(*r.nashconv) : json(nullptr);
  out["anc_percent"] = r.anc_percent ? json(*r.anc_percent) : json(nullptr);
  json seats = json::array();
  for (const AncSeat& s : r.seats) {
    seats.push_back({{"seat", s.seat},
                     {"value", s.value},
                     {"ci95", s.ci95 ? json(*s.ci95) : json(nullptr)},
                     {"br_value", s.br_value ? json(*s.br_value) : json(nullptr)},
                     {"frozen_infostates", s.num_infostates},
                     {"games", s.num_games},
                     {"diagnostics", Diagnostics(s.diagnostics)}});
  }
  out["seats"] = seats;
  report.Emit();
  if (r.protocol == AncProtocol::kExact && r.nashconv &&
      r.anc > *r.nashconv + 1e-9) {
    std::fprintf(stderr, "invariant failure: ANC %.9g exceeds NashConv %.9g\n",
                 r.anc, *r.nashconv);
    return kExitInvariant;
  }
  return 0;
}

std::unique_ptr<Agent> MakeAgent(const ExperimentConfig& c, GameId game,
                                 const std::string& source,
                                 const std::string& other) {
  if (source == "abr") {
    if (other == "abr") throw ConfigError("an ABR agent needs a policy opponent");
    const auto searchers = LoadSearchers(
        c, game, {ResolvePolicy(other, game, 1), ResolvePolicy(other, game, 0)});
    return std::make_unique<AbrAgent>("abr", searchers);
  }
  // Tabular sources cover one seat; build one policy per seat.
  struct BySeat final : Policy {
    std::array<std::shared_ptr<const Policy>, 2> seat;
    PolicyKind kind() const override { return seat[0]->kind(); }
    std::vector<double> ActionProbabilities(
        const InfoStateKey& key, std::span<const Action> legal) const override {
      return seat[key.player]->ActionProbabilities(key, legal);
    }
    std::string Describe() const override { return seat[0]->Describe(); }
  };
  auto policy = std::make_shared<BySeat>();
  policy->seat = {ResolvePolicy(source, game, 0), ResolvePolicy(source, game, 1)};
  return std::make_unique<PolicyAgent>(source, policy);
}

int CmdMatch(const ExperimentConfig& c) {
  Report report("match", c);
  const GameId game_id = c.RequireGame();
  const auto game = LoadGame(game_id);
  auto row = MakeAgent(c, game_id, c.row, c.col);
  auto col = MakeAgent(c, game_id, c.col, c.row);
  MatchConfig mc;
  mc.num_games = c.num_games;
  mc.alternate_seats = c.alternate_seats;
  mc.seed = c.RequireSeed();
  const MatchReport r = PlayMatch(*game, *row, *col, mc);
  json& out = report.result();
  out["row"] = c.row;
  out["col"] = c.col;
  out["num_games"] = r.num_games;
  out["alternate_seats"] = r.alternate_seats;
  out["row_mean"] = r.row_mean;
  out["col_mean"] = r.col_mean;
  out["row_ci95"] = r.row_ci95;
  out["row_mean_by_seat"] = r.row_mean_by_seat;
  out["games_by_seat"] = r.games_by_seat;
  out["log_digest"] = r.log_digest;
  if (const auto tree = TraversableTree(game_id);
      tree && c.row != "abr" && c.col != "abr") {
    const auto row0 = ResolvePolicy(c.row, game_id, 0);
    const auto row1 = ResolvePolicy(c.row, game_id, 1);
    const auto col0 = ResolvePolicy(c.col, game_id, 0);
    const auto col1 = ResolvePolicy(c.col, game_id, 1);
    const double as0 = ExpectedValue(*tree, *row0, *col1)[0];
    const double as1 = ExpectedValue(*tree, *col0, *row1)[1];
    out["exact_row_value"] = r.alternate_seats ? 0.5 * (as0 + as1) : as0;
  }
  report.Emit();
  if (r.row_mean + r.col_mean != 0) {
    std::fprintf(stderr, "invariant failure: seat means do not sum to zero\n");
    return kExitInvariant;
  }
  return 0;
}

int CmdGames() {
  json out = json::array();
  for (GameId id : AllGameIds()) {
    const auto game = LoadGame(id);
    json entry = {{"game_id", GameIdToString(id)},
                  {"max_utility", game->max_utility()},
                  {"max_game_length", game->spec().max_game_length},
                  {"num_distinct_actions", game->NumDistinctActions()},
                  {"tensor_size", game->InformationStateTensorSize()}};
    if (const auto tree = TraversableTree(id)) {
      entry["num_nodes"] = tree->num_nodes();
      entry["num_infostates"] = {tree->infostates(0).size(),
                                 tree->infostates(1).size()};
    } else {
      entry["num_nodes"] = nullptr;
      entry["num_infostates"] = nullptr;
    }
    out.push_back(entry);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int CmdBelief(const ExperimentConfig& c, const std::string& key_text) {
  const GameId game_id = c.RequireGame();
  if (key_text.size() < 2 || (key_text.rfind("p0", 0) != 0 && key_text.rfind("p1", 0) != 0)) {
    throw ConfigError("--key must be an information-state string starting with p0 or p1");
  }
  const Player player = key_text[1] - '0';
  const auto opponent = ResolvePolicy(c.players[1 - player], game_id, 1 - player);
  const BeliefDistribution b =
      Posterior(*LoadGame(game_id), InfoStateKey{player, key_text}, *opponent);
  std::cout << DescribeBelief(b);
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Exploitability evaluation with exact and approximate best responses"};
  app.require_subcommand(1);
  Overrides o;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "JSON experiment config");
    cmd->add_option("--game", o.game, "Game id");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--out", o.report, "Report path (JSON)");
  };
  auto profile = [&](CLI::App* cmd) {
    cmd->add_option("--p1", o.p1, "Policy source for seat 0");
    cmd->add_option("--p2", o.p2, "Policy source for seat 1");
  };
  auto search = [&](CLI::App* cmd) {
    cmd->add_option("--num-simulations", o.num_simulations, "Simulations per decision");
    cmd->add_option("--output-dir", o.output_dir, "Training output directory");
  };
  CLI::App* exact = app.add_subcommand("exact", "Exact NashConv of a profile");
  common(exact);
  profile(exact);
  CLI::App* cfr = app.add_subcommand("cfr", "Run CFR+ and write policy files");
  common(cfr);
  cfr->add_option("--iterations", o.iterations, "CFR+ iterations");
  cfr->add_option("--output-dir", o.output_dir, "Directory for policy files");
  CLI::App* train = app.add_subcommand("abr-train", "Train ABR evaluators");
  common(train);
  profile(train);
  search(train);
  train->add_option("--evaluator", o.evaluator, "tabular or fa");
  train->add_option("--episodes", o.max_episodes, "Episode budget per seat");
  train->add_option("--max-seconds", o.max_seconds, "Wall-clock budget per seat");
  train->add_option("--num-actors", o.num_actors, "Actor threads");
  train->add_option("--seats", o.seats, "Exploiter seats: 0, 1 or 0,1");
  train->add_flag("--resume", o.resume, "Continue from the existing checkpoints");
  CLI::App* eval = app.add_subcommand("abr-eval", "ANC of a profile");
  common(eval);
  profile(eval);
  search(eval);
  eval->add_option("--protocol", o.protocol, "exact or sampled");
  eval->add_option("--games", o.sampled_games, "Games per seat (sampled)");
  eval->add_option("--checkpoint0", o.checkpoint0, "Seat-0 exploiter checkpoint");
  eval->add_option("--checkpoint1", o.checkpoint1, "Seat-1 exploiter checkpoint");
  CLI::App* match = app.add_subcommand("match", "Head-to-head match");
  common(match);
  search(match);
  match->add_option("--row", o.row, "Row agent source (policy source or abr)");
  match->add_option("--col", o.col, "Column agent source");
  match->add_option("--games", o.num_games, "Number of games");
  match->add_flag("--no-alternate", o.no_alternate, "Keep the row agent at seat 0");
  match->add_option("--checkpoint0", o.checkpoint0, "ABR seat-0 checkpoint");
  match->add_option("--checkpoint1", o.checkpoint1, "ABR seat-1 checkpoint");
  CLI::App* games = app.add_subcommand("games", "List built-in games");
  CLI::App* belief = app.add_subcommand("belief", "Print an exact posterior");
  common(belief);
  profile(belief);
  belief->add_option("--key", o.key, "Information-state string")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    if (games->parsed()) return CmdGames();
    const ExperimentConfig c = Resolve(o);
    if (exact->parsed()) return CmdExact(c);
    if (cfr->parsed()) return CmdCfr(c);
    if (train->parsed()) return CmdAbrTrain(c);
    if (eval->parsed()) return CmdAbrEval(c);
    if (match->parsed()) return CmdMatch(c);
    if (belief->parsed()) return CmdBelief(c, o.key);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariant;
  }
  return kExitConfig;
}

}  // namespace
}  // namespace abr

int main(int argc, char** argv) { return abr::Main(argc, argv); }
