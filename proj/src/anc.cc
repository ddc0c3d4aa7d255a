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


#include "abr/anc.h"

#include <cmath>

#include "abr/exact_eval.h"

namespace abr {

AncProtocol AncProtocolFromString(const std::string& s) {
  if (s == "exact") return AncProtocol::kExact;
  if (s == "sampled") return AncProtocol::kSampled;
  throw ConfigError("unknown evaluation protocol '" + s +
                    "' (exact or sampled)");
}

std::string AncProtocolToString(AncProtocol protocol) {
  return protocol == AncProtocol::kExact ? "exact" : "sampled";
}

FrozenAbr FreezeAbr(const GameTree& tree,
                    std::shared_ptr<const AbrSearcher> searcher) {
  const Player seat = searcher->seat();
  SearchBackedPolicy greedy(searcher);
  const Policy* pi0 = seat == 0 ? static_cast<const Policy*>(&greedy)
                                : &searcher->opponent();
  const Policy* pi1 = seat == 1 ? static_cast<const Policy*>(&greedy)
                                : &searcher->opponent();
  FrozenAbr frozen;
  frozen.value = ExpectedValue(tree, *pi0, *pi1)[seat];
  frozen.policy = std::make_shared<TabularPolicy>(tree.game().id(), seat);
  for (const auto& [observation, action] : greedy.Snapshot()) {
    const int index = tree.InfoStateIndex(seat, observation);
    ABR_REQUIRE(index >= 0, "frozen key missing from the game tree");
    const std::vector<Action>& legal = tree.infostates(seat)[index].legal;
    std::vector<double> probs(legal.size(), 0.0);
    for (size_t i = 0; i < legal.size(); ++i) probs[i] = legal[i] == action;
    frozen.policy->Set(observation, std::move(probs));
  }
  return frozen;
}

AncSeat SampledAbrValue(const AbrSearcher& searcher, int num_games,
                        std::uint64_t seed) {
  ABR_REQUIRE(num_games >= 2, "sampled protocol needs at least two games");
  double sum = 0, sum_sq = 0;
  for (int g = 0; g < num_games; ++g) {
    std::mt19937_64 rng(MixSeed(seed, static_cast<std::uint64_t>(g)));
    const double r = searcher.PlayEpisode(rng, /*training=*/false).episode_return;
    sum += r;
    sum_sq += r * r;
  }
  AncSeat result;
  result.seat = searcher.seat();
  result.num_games = num_games;
  result.value = sum / num_games;
  const double var =
      std::max(0.0, (sum_sq - num_games * result.value * result.value) /
                        (num_games - 1));
  result.ci95 = 1.96 * std::sqrt(var / num_games);
  return result;
}

AncReport ComputeAnc(const GameTree* tree,
                     const std::array<std::shared_ptr<const AbrSearcher>, 2>& abr,
                     AncProtocol protocol, int sampled_games,
                     std::uint64_t seed) {
  ABR_REQUIRE(abr[0] && abr[1] && abr[0]->seat() == 0 && abr[1]->seat() == 1,
              "ANC needs one searcher per seat");
  if (protocol == AncProtocol::kExact && tree == nullptr) {
    throw ConfigError(
        "exact protocol needs a traversable game; use the sampled protocol");
  }
  AncReport report;
  report.protocol = protocol;
  double var = 0;
  for (Player seat : {0, 1}) {
    AncSeat& s = report.seats[seat];
    if (protocol == AncProtocol::kExact) {
      const FrozenAbr frozen = FreezeAbr(*tree, abr[seat]);
      s.seat = seat;
      s.value = frozen.value;
      s.num_infostates = static_cast<std::int64_t>(frozen.policy->table().size());
    } else {
      s = SampledAbrValue(*abr[seat], sampled_games, MixSeed(seed, seat));
      var += std::pow(*s.ci95 / 1.96, 2);
    }
    s.diagnostics = abr[seat]->diagnostics();
    if (tree != nullptr) {
      s.br_value = BestResponse(*tree, abr[seat]->opponent(), seat).br_value;
    }
    report.anc += s.value;
  }
  if (protocol == AncProtocol::kSampled) report.ci95 = 1.96 * std::sqrt(var);
  if (tree != nullptr) {
    report.nashconv = *report.seats[0].br_value + *report.seats[1].br_value;
    if (*report.nashconv > 0) {
      report.anc_percent = 100.0 * report.anc / *report.nashconv;
    }
  }
  return report;
}

}  // namespace abr
