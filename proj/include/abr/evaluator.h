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


#ifndef ABR_EVALUATOR_H_
#define ABR_EVALUATOR_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "abr/game.h"
#include "abr/mlp.h"

namespace abr {

struct EvaluatorOutput {
  std::vector<double> prior;  // Aligned with the legal actions.
  double value = 0;           // In [-1, 1]; search rescales by max_utility.
};

// One learner input: features s, visit-count target p and rescaled return z.
struct TrainingExample {
  std::vector<double> features;
  std::string key;
  std::vector<Action> legal;
  std::vector<double> target_policy;  // Aligned with `legal`.
  double z = 0;                       // Episode return / max_utility.
};

enum class EvaluatorKind { kTabular, kFunctionApproximation };
EvaluatorKind EvaluatorKindFromString(const std::string& s);
std::string EvaluatorKindToString(EvaluatorKind kind);

// f_theta(s) -> (prior, value). Evaluate must be safe to call concurrently.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual EvaluatorKind kind() const = 0;
  virtual EvaluatorOutput Evaluate(std::span<const double> features,
                                   const InfoStateKey& key,
                                   std::span<const Action> legal) const = 0;
};

// Per-key running means of observed returns and visit-count policies.
// Misses return a uniform prior and value 0.
class TabularEvaluator final : public Evaluator {
 public:
  struct Entry {
    std::vector<double> prior_sum;
    double value_sum = 0;
    std::int64_t count = 0;
  };

  EvaluatorKind kind() const override { return EvaluatorKind::kTabular; }
  EvaluatorOutput Evaluate(std::span<const double> features,
                           const InfoStateKey& key,
                           std::span<const Action> legal) const override;

  void Update(std::span<const TrainingExample> batch);
  void SetEntry(const std::string& key, Entry entry);
  std::unordered_map<std::string, Entry> Snapshot() const;
  size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Entry> table_;
};

// Evaluates with the latest published network snapshot. The learner owns
// the mutable network and publishes immutable copies.
class MlpEvaluator final : public Evaluator {
 public:
  explicit MlpEvaluator(std::shared_ptr<const Mlp> net) : net_(std::move(net)) {}

  EvaluatorKind kind() const override {
    return EvaluatorKind::kFunctionApproximation;
  }
  EvaluatorOutput Evaluate(std::span<const double> features,
                           const InfoStateKey& key,
                           std::span<const Action> legal) const override;

  std::shared_ptr<const Mlp> snapshot() const;
  void Publish(std::shared_ptr<const Mlp> net);

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const Mlp> net_;
};

// Returns a uniform prior and value 0 everywhere.
class ZeroEvaluator final : public Evaluator {
 public:
  EvaluatorKind kind() const override { return EvaluatorKind::kTabular; }
  EvaluatorOutput Evaluate(std::span<const double> features,
                           const InfoStateKey& key,
                           std::span<const Action> legal) const override;
};

}  // namespace abr

#endif  // ABR_EVALUATOR_H_
