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


#include "abr/evaluator.h"

namespace abr {

EvaluatorKind EvaluatorKindFromString(const std::string& s) {
  if (s == "tabular") return EvaluatorKind::kTabular;
  if (s == "fa" || s == "function_approximation") {
    return EvaluatorKind::kFunctionApproximation;
  }
  throw ConfigError("unknown evaluator kind '" + s + "' (tabular or fa)");
}

std::string EvaluatorKindToString(EvaluatorKind kind) {
  return kind == EvaluatorKind::kTabular ? "tabular" : "fa";
}

EvaluatorOutput TabularEvaluator::Evaluate(std::span<const double>,
                                           const InfoStateKey& key,
                                           std::span<const Action> legal) const {
  ABR_REQUIRE(!legal.empty(), "no legal actions");
  EvaluatorOutput out;
  std::shared_lock lock(mu_);
  auto it = table_.find(key.observation);
  if (it == table_.end() || it->second.count == 0 ||
      it->second.prior_sum.size() != legal.size()) {
    out.prior.assign(legal.size(), 1.0 / static_cast<double>(legal.size()));
    out.value = 0;
    return out;
  }
  const Entry& e = it->second;
  double total = 0;
  for (double p : e.prior_sum) total += p;
  out.prior.resize(legal.size());
  for (size_t i = 0; i < legal.size(); ++i) out.prior[i] = e.prior_sum[i] / total;
  out.value = e.value_sum / static_cast<double>(e.count);
  return out;
}

void TabularEvaluator::Update(std::span<const TrainingExample> batch) {
  std::unique_lock lock(mu_);
  for (const TrainingExample& ex : batch) {
    Entry& e = table_[ex.key];
    if (e.prior_sum.empty()) e.prior_sum.assign(ex.target_policy.size(), 0.0);
    ABR_REQUIRE(e.prior_sum.size() == ex.target_policy.size(),
                "target policy length changed at '" + ex.key + "'");
    for (size_t i = 0; i < e.prior_sum.size(); ++i) {
      e.prior_sum[i] += ex.target_policy[i];
    }
    e.value_sum += ex.z;
    ++e.count;
  }
}

void TabularEvaluator::SetEntry(const std::string& key, Entry entry) {
  std::unique_lock lock(mu_);
  table_[key] = std::move(entry);
}

std::unordered_map<std::string, TabularEvaluator::Entry>
TabularEvaluator::Snapshot() const {
  std::shared_lock lock(mu_);
  return table_;
}

size_t TabularEvaluator::size() const {
  std::shared_lock lock(mu_);
  return table_.size();
}

EvaluatorOutput MlpEvaluator::Evaluate(std::span<const double> features,
                                       const InfoStateKey&,
                                       std::span<const Action> legal) const {
  ABR_REQUIRE(!legal.empty(), "no legal actions");
  const std::shared_ptr<const Mlp> net = snapshot();
  EvaluatorOutput out;
  net->Evaluate(features, legal, &out.prior, &out.value);
  return out;
}

std::shared_ptr<const Mlp> MlpEvaluator::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return net_;
}

void MlpEvaluator::Publish(std::shared_ptr<const Mlp> net) {
  std::lock_guard<std::mutex> lock(mu_);
  net_ = std::move(net);
}

EvaluatorOutput ZeroEvaluator::Evaluate(std::span<const double>,
                                        const InfoStateKey&,
                                        std::span<const Action> legal) const {
  ABR_REQUIRE(!legal.empty(), "no legal actions");
  return {std::vector<double>(legal.size(), 1.0 / static_cast<double>(legal.size())),
          0.0};
}

}  // namespace abr
