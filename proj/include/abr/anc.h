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


#ifndef ABR_ANC_H_
#define ABR_ANC_H_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "abr/game_tree.h"
#include "abr/policy.h"
#include "abr/search.h"

namespace abr {

enum class AncProtocol { kExact, kSampled };
AncProtocol AncProtocolFromString(const std::string& s);
std::string AncProtocolToString(AncProtocol protocol);

struct AncSeat {
  Player seat = 0;                   // Seat of the exploiter.
  double value = 0;                  // Exploiter's value vs the fixed policy.
  std::optional<double> ci95;        // Half-width, sampled protocol only.
  std::optional<double> br_value;    // Exact best-response value, if known.
  std::int64_t num_infostates = 0;   // Frozen infostates, exact protocol.
  std::int64_t num_games = 0;        // Sampled protocol only.
  SearchDiagnostics diagnostics;
};

struct AncReport {
  AncProtocol protocol = AncProtocol::kExact;
  std::array<AncSeat, 2> seats;
  double anc = 0;                      // seats[0].value + seats[1].value.
  std::optional<double> ci95;          // Sampled protocol only.
  std::optional<double> nashconv;      // Exact, when the tree is available.
  std::optional<double> anc_percent;   // 100 * anc / nashconv.
};

// Freezes the searcher into a deterministic tabular policy over every
// information state reachable under (frozen searcher, opponent, chance):
// each key is searched once with a fresh tree seeded by
// MixSeed(config.seed, Fnv1a64(key)) and its argmax-visit action kept.
// Returns the frozen policy and the searcher's exact value against the
// opponent.
struct FrozenAbr {
  std::shared_ptr<TabularPolicy> policy;
  double value = 0;
};
FrozenAbr FreezeAbr(const GameTree& tree,
                    std::shared_ptr<const AbrSearcher> searcher);

// Mean searcher return over `num_games` evaluation episodes (argmax play,
// fresh tree per game, game g seeded by MixSeed(seed, g)).
AncSeat SampledAbrValue(const AbrSearcher& searcher, int num_games,
                        std::uint64_t seed);

// ANC of the profile (pi0, pi1): abr[0] plays seat 0 against pi1 and abr[1]
// plays seat 1 against pi0. `tree` is required for the exact protocol and
// adds NashConv and ANC% to either protocol when present.
AncReport ComputeAnc(const GameTree* tree,
                     const std::array<std::shared_ptr<const AbrSearcher>, 2>& abr,
                     AncProtocol protocol, int sampled_games = 0,
                     std::uint64_t seed = 0);

}  // namespace abr

#endif  // ABR_ANC_H_
