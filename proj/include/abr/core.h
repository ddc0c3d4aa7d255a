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

#ifndef ABR_CORE_H_
#define ABR_CORE_H_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace abr {

using Action = int;
using Player = int;

inline constexpr Player kChancePlayerId = -1;
inline constexpr Player kTerminalPlayerId = -4;
inline constexpr int kNumPlayers = 2;

// A caller broke a documented precondition (illegal action, returns on a
// non-terminal history, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad user input: unknown game id, malformed file, inconsistent config.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure (non-finite loss, evaluator failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void ThrowContractViolation(const std::string& what);

#define ABR_REQUIRE(cond, msg)                                        \
  do {                                                                \
    if (!(cond)) ::abr::ThrowContractViolation(std::string(msg));     \
  } while (0)

using ActionsAndProbs = std::vector<std::pair<Action, double>>;

// 64-bit FNV-1a; used for deterministic per-key seeding and report digests.
std::uint64_t Fnv1a64(std::string_view data);
std::string HexDigest(std::uint64_t value);

// Derives an independent stream seed from (seed, index) with splitmix64.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t index);

// Draws an index with probability proportional to probs[i]. The weights need
// not be normalized but must have a positive sum.
int SampleIndex(std::span<const double> probs, std::mt19937_64& rng);

}  // namespace abr

#endif  // ABR_CORE_H_
