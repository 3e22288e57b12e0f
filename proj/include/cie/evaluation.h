// Copyright 2026 The CIE Authors
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

// Fidelity protocol, interpretability sweeps and word-list baselines.

#ifndef CIE_EVALUATION_H_
#define CIE_EVALUATION_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cie/class_explainer.h"
#include "cie/corpus.h"
#include "cie/miner.h"

namespace cie {

struct LabelingStats {
  double fidelity = 0.0;
  double abstain_rate = 0.0;
};

// Labels every sample with the instance explainer over `store` and compares
// against the black-box labels. Abstentions count as misses.
LabelingStats LabelWithStore(const Dataset& dataset, const MinedItemsets& store,
                             std::optional<int> cap = std::nullopt);

double InstanceFidelity(const Dataset& dataset, const MinedItemsets& mined,
                        std::optional<int> cap = std::nullopt);

// Uses the class explanations as the itemset store.
double ClasswiseFidelity(std::span<const ClassExplanation> explanations,
                         const Dataset& dataset);

enum class SweepAxis { kAlpha, kBeta, kGamma };

SweepAxis ParseSweepAxis(std::string_view name);
const char* SweepAxisName(SweepAxis axis);

struct SweepConfig {
  SweepAxis axis = SweepAxis::kAlpha;
  std::vector<int> budgets;

  // Budgets must be non-empty, positive and strictly increasing.
  void Validate() const;
};

struct CurvePoint {
  SweepAxis axis = SweepAxis::kAlpha;
  int budget = 0;
  double fidelity = 0.0;
};

// alpha: instance fidelity with at most `budget` itemsets per class.
// beta: class-wise fidelity with theta1 = budget.
// gamma: fidelity of labeling with a budget-unit global explanation.
std::vector<CurvePoint> Sweep(const Dataset& dataset,
                              const MinedItemsets& mined,
                              const SweepConfig& sweep,
                              const ObjectiveConfig& objective,
                              double lambda = 1.0, int jobs = 1);

enum class BaselineKind { kRandom, kGreedy };

BaselineKind ParseBaselineKind(std::string_view name);
const char* BaselineKindName(BaselineKind kind);

struct BaselineConfig {
  BaselineKind kind = BaselineKind::kRandom;
  int n_words = 10;
  std::uint64_t seed = 0;  // random only

  void Validate() const;
};

struct BaselineResult {
  BaselineConfig config;
  std::vector<std::vector<std::string>> words;  // by class, sorted
  double fidelity = 0.0;
  double abstain_rate = 0.0;
};

// Labels each sample with the class whose word list shares the most distinct
// tokens with it; ties go to the smaller class id, no overlap abstains.
LabelingStats LabelWithWordLists(
    const Dataset& dataset,
    const std::vector<std::vector<std::string>>& words);

// N distinct words per class drawn uniformly from the class vocabulary.
BaselineResult RandomBaseline(const Dataset& dataset,
                              const BaselineConfig& config);
// N words per class with the highest P(class | word), ties lexicographic.
BaselineResult GreedyBaseline(const Dataset& dataset,
                              const BaselineConfig& config);
BaselineResult RunBaseline(const Dataset& dataset,
                           const BaselineConfig& config);

struct EvalReport {
  std::uint64_t seed = 0;
  double instance_fidelity = 0.0;
  double abstain_rate = 0.0;
  double classwise_fidelity = 0.0;
  std::vector<ClassExplanation> class_explanations;
  std::vector<CurvePoint> curves;
  std::vector<BaselineResult> baselines;
};

struct EvalOptions {
  ObjectiveConfig objective;
  std::vector<SweepConfig> sweeps;
  std::vector<BaselineConfig> baselines;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

EvalReport Evaluate(const Dataset& dataset, const MinedItemsets& mined,
                    const EvalOptions& options);

struct WeightTrial {
  std::array<double, 6> weights{};
  double score = 0.0;  // mean held-out class-wise fidelity
};

struct WeightSearchResult {
  WeightTrial best;
  std::vector<WeightTrial> trials;  // grid order
};

// K-fold search over every weight vector drawn from `values` (all-zero
// vectors skipped). Each fold mines and optimizes on the training part and
// scores class-wise fidelity on the held-out part. Ties keep the earlier
// grid point.
WeightSearchResult GridSearchWeights(const Dataset& dataset,
                                     const MiningParams& mining,
                                     const ObjectiveConfig& base,
                                     std::span<const double> values,
                                     int folds, std::uint64_t seed,
                                     int jobs = 1);

}  // namespace cie

#endif  // CIE_EVALUATION_H_
