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


#include "abr/policy.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "abr/game_tree.h"

namespace abr {

namespace {

std::vector<double> Uniform(size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

std::vector<double> OneHot(std::span<const Action> legal, Action action) {
  std::vector<double> probs(legal.size(), 0.0);
  for (size_t i = 0; i < legal.size(); ++i) {
    if (legal[i] == action) probs[i] = 1.0;
  }
  return probs;
}

bool Contains(std::span<const Action> legal, Action a) {
  return std::find(legal.begin(), legal.end(), a) != legal.end();
}

std::string FormatProbs(const std::vector<double>& probs) {
  std::string out;
  char buf[40];
  for (size_t i = 0; i < probs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", probs[i]);
    if (i > 0) out += ',';
    out += buf;
  }
  return out;
}

std::string PlayerToString(Player p) { return p < 0 ? "all" : std::to_string(p); }

}  // namespace

std::string PolicyKindToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kTabular: return "tabular";
    case PolicyKind::kUniform: return "uniform";
    case PolicyKind::kFixedRule: return "fixed_rule";
    case PolicyKind::kSearchBacked: return "search_backed";
  }
  return "unknown";
}

std::string ValidateDistribution(std::span<const double> probs,
                                 double tolerance) {
  if (probs.empty()) return "empty distribution";
  double sum = 0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0) return "negative or non-finite probability";
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << sum;
    return os.str();
  }
  return "";
}

std::vector<double> Policy::ActionProbabilities(const State& state) const {
  const std::vector<Action> legal = state.LegalActions();
  return ActionProbabilities(state.Key(state.CurrentPlayer()), legal);
}

std::vector<double> UniformPolicy::ActionProbabilities(
    const InfoStateKey&, std::span<const Action> legal) const {
  ABR_REQUIRE(!legal.empty(), "no legal actions");
  return Uniform(legal.size());
}

TabularPolicy::TabularPolicy(GameId game, Player player, Table table)
    : game_(game), player_(player), table_(std::move(table)) {
  for (const auto& [key, probs] : table_) {
    const std::string err = ValidateDistribution(probs);
    ABR_REQUIRE(err.empty(), "invalid distribution at '" + key + "': " + err);
  }
}

TabularPolicy::TabularPolicy(const TabularPolicy& other)
    : game_(other.game_), player_(other.player_), table_(other.table_) {}

void TabularPolicy::Set(const std::string& observation,
                        std::vector<double> probs) {
  const std::string err = ValidateDistribution(probs);
  ABR_REQUIRE(err.empty(),
              "invalid distribution at '" + observation + "': " + err);
  table_[observation] = std::move(probs);
}

const std::vector<double>* TabularPolicy::Find(
    const std::string& observation) const {
  auto it = table_.find(observation);
  return it == table_.end() ? nullptr : &it->second;
}

std::vector<double> TabularPolicy::ActionProbabilities(
    const InfoStateKey& key, std::span<const Action> legal) const {
  ABR_REQUIRE(!legal.empty(), "no legal actions");
  auto it = table_.find(key.observation);
  if (it == table_.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return Uniform(legal.size());
  }
  ABR_REQUIRE(it->second.size() == legal.size(),
              "tabular entry at '" + key.observation + "' has " +
                  std::to_string(it->second.size()) + " actions, expected " +
                  std::to_string(legal.size()));
  return it->second;
}

std::string TabularPolicy::Describe() const {
  return "tabular(" + GameIdToString(game_) + ", player " +
         PlayerToString(player_) + ", " + std::to_string(table_.size()) +
         " infostates)";
}

ChumpRule ChumpRuleFromString(const std::string& id) {
  if (id == "always_fold") return ChumpRule::kAlwaysFold;
  if (id == "always_call") return ChumpRule::kAlwaysCall;
  if (id == "uniform_random" || id == "uniform") return ChumpRule::kUniformRandom;
  throw ConfigError("unknown fixed rule '" + id +
                    "' (expected always_fold, always_call or uniform_random)");
}

std::string ChumpRuleToString(ChumpRule rule) {
  switch (rule) {
    case ChumpRule::kAlwaysFold: return "always_fold";
    case ChumpRule::kAlwaysCall: return "always_call";
    case ChumpRule::kUniformRandom: return "uniform_random";
  }
  return "unknown";
}

FixedRulePolicy::FixedRulePolicy(ChumpRule rule, GameId game)
    : rule_(rule), game_(game) {
  const bool poker = game == GameId::kKuhnPoker || game == GameId::kLeducPoker;
  if (rule != ChumpRule::kUniformRandom && !poker) {
    throw ConfigError(ChumpRuleToString(rule) +
                      " needs a poker game, not " + GameIdToString(game));
  }
}

std::vector<double> FixedRulePolicy::ActionProbabilities(
    const InfoStateKey& key, std::span<const Action> legal) const {
  ABR_REQUIRE(!legal.empty(), "no legal actions");
  if (rule_ == ChumpRule::kUniformRandom) return Uniform(legal.size());
  if (game_ == GameId::kLeducPoker) {
    // fold = 0, call = 1, raise = 2; fold is only legal facing a raise.
    const Action a =
        (rule_ == ChumpRule::kAlwaysFold && Contains(legal, 0)) ? 0 : 1;
    return OneHot(legal, a);
  }
  // Kuhn: pass = 0 (check or fold), bet = 1 (bet or call).
  const bool facing_bet =
      key.observation.size() >= 2 &&
      key.observation.compare(key.observation.size() - 2, 2, " b") == 0;
  const Action a = (rule_ == ChumpRule::kAlwaysCall && facing_bet) ? 1 : 0;
  return OneHot(legal, a);
}

std::shared_ptr<const Policy> MakeChump(ChumpRule rule, GameId game) {
  return std::make_shared<FixedRulePolicy>(rule, game);
}

std::shared_ptr<const TabularPolicy> Perturb(const TabularPolicy& policy,
                                             double epsilon,
                                             std::uint64_t seed) {
  ABR_REQUIRE(epsilon >= 0.0 && epsilon <= 1.0, "epsilon must be in [0, 1]");
  TabularPolicy::Table table;
  for (const auto& [key, probs] : policy.table()) {
    std::mt19937_64 rng(seed ^ Fnv1a64(key));
    std::exponential_distribution<double> exp(1.0);
    std::vector<double> noise(probs.size());
    double total = 0;
    for (double& x : noise) total += (x = exp(rng));
    std::vector<double> mixed(probs.size());
    double sum = 0;
    for (size_t i = 0; i < probs.size(); ++i) {
      mixed[i] = (1.0 - epsilon) * probs[i] + epsilon * noise[i] / total;
      sum += mixed[i];
    }
    for (double& m : mixed) m /= sum;
    table.emplace(key, std::move(mixed));
  }
  return std::make_shared<TabularPolicy>(policy.game(), policy.player(),
                                         std::move(table));
}

std::shared_ptr<TabularPolicy> ToTabular(const Policy& policy, GameId game,
                                         Player player) {
  auto tree = CachedGameTree(game);
  auto out = std::make_shared<TabularPolicy>(game, player);
  for (Player p = 0; p < 2; ++p) {
    if (player >= 0 && p != player) continue;
    for (const InfoStateInfo& info : tree->infostates(p)) {
      out->Set(info.key.observation,
               policy.ActionProbabilities(info.key, info.legal));
    }
  }
  return out;
}

std::shared_ptr<TabularPolicy> RandomTabularPolicy(GameId game, Player player,
                                                   std::uint64_t seed) {
  auto tree = CachedGameTree(game);
  auto out = std::make_shared<TabularPolicy>(game, player);
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp(1.0);
  for (Player p = 0; p < 2; ++p) {
    if (player >= 0 && p != player) continue;
    for (const InfoStateInfo& info : tree->infostates(p)) {
      std::vector<double> probs(info.legal.size());
      double total = 0;
      for (double& x : probs) total += (x = exp(rng));
      for (double& x : probs) x /= total;
      out->Set(info.key.observation, std::move(probs));
    }
  }
  return out;
}

std::string SerializePolicy(const Policy& policy, GameId game, Player player) {
  std::ostringstream os;
  os << "format_version " << kPolicyFormatVersion << "\n";
  os << "game_id " << GameIdToString(game) << "\n";
  os << "player " << PlayerToString(player) << "\n";
  switch (policy.kind()) {
    case PolicyKind::kTabular: {
      const auto& tab = static_cast<const TabularPolicy&>(policy);
      os << "kind tabular\n";
      std::vector<const std::string*> keys;
      for (const auto& entry : tab.table()) keys.push_back(&entry.first);
      std::sort(keys.begin(), keys.end(),
                [](const std::string* a, const std::string* b) { return *a < *b; });
      for (const std::string* key : keys) {
        os << *key << '\t' << FormatProbs(*tab.Find(*key)) << '\n';
      }
      break;
    }
    case PolicyKind::kFixedRule:
      os << "kind fixed_rule\nrule "
         << ChumpRuleToString(static_cast<const FixedRulePolicy&>(policy).rule())
         << "\n";
      break;
    case PolicyKind::kUniform:
      os << "kind fixed_rule\nrule uniform_random\n";
      break;
    case PolicyKind::kSearchBacked:
      ThrowContractViolation(
          "search-backed policies cannot be saved; freeze them first");
  }
  return os.str();
}

void SavePolicy(const Policy& policy, GameId game, Player player,
                const std::string& path) {
  const std::string text = SerializePolicy(policy, game, player);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write policy file " + path);
  out << text;
}

std::shared_ptr<const Policy> ParsePolicy(const std::string& text,
                                          GameId expected_game) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> header;
  TabularPolicy::Table table;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      const size_t sp = line.find(' ');
      if (sp == std::string::npos || !table.empty()) {
        throw ConfigError("malformed policy line " + std::to_string(line_no) +
                          ": '" + line + "'");
      }
      header[line.substr(0, sp)] = line.substr(sp + 1);
      continue;
    }
    const std::string key = line.substr(0, tab);
    std::vector<double> probs;
    std::stringstream fields(line.substr(tab + 1));
    std::string field;
    while (std::getline(fields, field, ',')) {
      char* end = nullptr;
      const double p = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size()) {
        throw ConfigError("malformed probability '" + field + "' at key '" +
                          key + "'");
      }
      probs.push_back(p);
    }
    const std::string err = ValidateDistribution(probs);
    if (!err.empty()) {
      throw ConfigError("invalid distribution at key '" + key + "': " + err);
    }
    if (!table.emplace(key, std::move(probs)).second) {
      throw ConfigError("duplicate key '" + key + "'");
    }
  }
  for (const char* field : {"format_version", "game_id", "player", "kind"}) {
    if (!header.count(field)) {
      throw ConfigError(std::string("policy file lacks header field ") + field);
    }
  }
  if (header["format_version"] != std::to_string(kPolicyFormatVersion)) {
    throw ConfigError("unsupported policy format_version " +
                      header["format_version"] + " (expected " +
                      std::to_string(kPolicyFormatVersion) + ")");
  }
  const GameId game = GameIdFromString(header["game_id"]);
  if (game != expected_game) {
    throw ConfigError("policy file is for " + header["game_id"] +
                      ", expected " + GameIdToString(expected_game));
  }
  Player player = -1;
  if (header["player"] == "0") player = 0;
  else if (header["player"] == "1") player = 1;
  else if (header["player"] != "all")
    throw ConfigError("bad player field '" + header["player"] + "'");
  if (header["kind"] == "tabular") {
    return std::make_shared<TabularPolicy>(game, player, std::move(table));
  }
  if (header["kind"] == "fixed_rule") {
    if (!header.count("rule")) throw ConfigError("fixed_rule policy lacks rule");
    if (!table.empty()) throw ConfigError("fixed_rule policy has table entries");
    return MakeChump(ChumpRuleFromString(header["rule"]), game);
  }
  throw ConfigError("unknown policy kind '" + header["kind"] + "'");
}

std::shared_ptr<const Policy> LoadPolicy(const std::string& path,
                                         GameId expected_game) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open policy file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParsePolicy(buffer.str(), expected_game);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace abr
