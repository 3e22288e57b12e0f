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

#include "cie/evaluation.h"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "cie/error.h"
#include "cie/instance_explainer.h"
#include "cie/lexicon.h"

namespace cie {

LabelingStats LabelWithStore(const Dataset& dataset, const MinedItemsets& store,
                             std::optional<int> cap) {
  LabelingStats stats;
  if (dataset.size() == 0) return stats;
  int agree = 0;
  int abstain = 0;
  for (const Sample& s : dataset.samples()) {
    const ClassId label = SurrogateLabel(s, store, cap);
    if (label == kAbstain) {
      ++abstain;
    } else if (label == s.predicted_label) {
      ++agree;
    }
  }
  const auto m = static_cast<double>(dataset.size());
  stats.fidelity = agree / m;
  stats.abstain_rate = abstain / m;
  return stats;
}

double InstanceFidelity(const Dataset& dataset, const MinedItemsets& mined,
                        std::optional<int> cap) {
  return LabelWithStore(dataset, mined, cap).fidelity;
}

double ClasswiseFidelity(std::span<const ClassExplanation> explanations,
                         const Dataset& dataset) {
  return LabelWithStore(dataset, AsStore(explanations, dataset.num_classes()))
      .fidelity;
}

SweepAxis ParseSweepAxis(std::string_view name) {
  if (name == "alpha") return SweepAxis::kAlpha;
  if (name == "beta") return SweepAxis::kBeta;
  if (name == "gamma") return SweepAxis::kGamma;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown sweep axis '" + std::string(name) + "'");
}

const char* SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kAlpha: return "alpha";
    case SweepAxis::kBeta: return "beta";
    case SweepAxis::kGamma: return "gamma";
  }
  return "?";
}

void SweepConfig::Validate() const {
  if (budgets.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "sweep budgets are empty");
  }
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (budgets[i] < 1 || (i > 0 && budgets[i] <= budgets[i - 1])) {
      throw Error(ErrorKind::kInvalidArgument,
                  "sweep budgets must be positive and strictly increasing");
    }
  }
}

std::vector<CurvePoint> Sweep(const Dataset& dataset,
                              const MinedItemsets& mined,
                              const SweepConfig& sweep,
                              const ObjectiveConfig& objective, double lambda,
                              int jobs) {
  sweep.Validate();
  std::vector<CurvePoint> curve;
  for (int budget : sweep.budgets) {
    CurvePoint point;
    point.axis = sweep.axis;
    point.budget = budget;
    switch (sweep.axis) {
      case SweepAxis::kAlpha:
        point.fidelity = InstanceFidelity(dataset, mined, budget);
        break;
      case SweepAxis::kBeta: {
        ObjectiveConfig cfg = objective;
        cfg.theta1 = budget;
        point.fidelity =
            ClasswiseFidelity(ExplainClasses(dataset, mined, cfg, jobs),
                              dataset);
        break;
      }
      case SweepAxis::kGamma: {
        const GlobalExplanation global =
            SelectGlobalExplanation(mined, dataset, budget, lambda);
        point.fidelity =
            LabelWithStore(dataset, AsStore(global, dataset.num_classes()))
                .fidelity;
        break;
      }
    }
    curve.push_back(point);
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Baselines

BaselineKind ParseBaselineKind(std::string_view name) {
  if (name == "random") return BaselineKind::kRandom;
  if (name == "greedy") return BaselineKind::kGreedy;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown baseline '" + std::string(name) + "'");
}

const char* BaselineKindName(BaselineKind kind) {
  return kind == BaselineKind::kRandom ? "random" : "greedy";
}

void BaselineConfig::Validate() const {
  if (n_words < 1) {
    throw Error(ErrorKind::kInvalidArgument, "baseline N must be >= 1");
  }
}

namespace {

std::vector<std::vector<std::string>> SampleWords(const Dataset& dataset) {
  std::vector<std::vector<std::string>> words;
  words.reserve(dataset.size());
  for (const Sample& s : dataset.samples()) {
    std::vector<std::string> tokens = Tokenize(s.text);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    words.push_back(std::move(tokens));
  }
  return words;
}

// Unbiased draw from [0, n). std::uniform_int_distribution is not pinned
// across standard libraries, the engine output is.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

}  // namespace

LabelingStats LabelWithWordLists(
    const Dataset& dataset,
    const std::vector<std::vector<std::string>>& words) {
  std::vector<std::vector<std::string>> lists = words;
  for (auto& list : lists) std::sort(list.begin(), list.end());
  const auto sample_words = SampleWords(dataset);
  LabelingStats stats;
  if (dataset.size() == 0) return stats;
  int agree = 0;
  int abstain = 0;
  std::vector<std::string> common;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    int best_class = kAbstain;
    std::size_t best_overlap = 0;
    for (std::size_t c = 0; c < lists.size(); ++c) {
      common.clear();
      std::set_intersection(sample_words[i].begin(), sample_words[i].end(),
                            lists[c].begin(), lists[c].end(),
                            std::back_inserter(common));
      if (common.size() > best_overlap) {
        best_overlap = common.size();
        best_class = static_cast<int>(c);
      }
    }
    if (best_class == kAbstain) {
      ++abstain;
    } else if (best_class == dataset.sample(i).predicted_label) {
      ++agree;
    }
  }
  const auto m = static_cast<double>(dataset.size());
  stats.fidelity = agree / m;
  stats.abstain_rate = abstain / m;
  return stats;
}

BaselineResult RandomBaseline(const Dataset& dataset,
                              const BaselineConfig& config) {
  config.Validate();
  const auto sample_words = SampleWords(dataset);
  std::mt19937_64 rng(config.seed);
  BaselineResult result;
  result.config = config;
  for (int c = 0; c < dataset.num_classes(); ++c) {
    std::set<std::string> vocab_set;
    for (SampleIndex s : dataset.class_members(c)) {
      vocab_set.insert(sample_words[s].begin(), sample_words[s].end());
    }
    std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
    const std::size_t take =
        std::min<std::size_t>(vocab.size(), config.n_words);
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < take; ++i) {
      const std::size_t j = i + UniformBelow(rng, vocab.size() - i);
      std::swap(vocab[i], vocab[j]);
    }
    vocab.resize(take);
    std::sort(vocab.begin(), vocab.end());
    result.words.push_back(std::move(vocab));
  }
  const LabelingStats stats = LabelWithWordLists(dataset, result.words);
  result.fidelity = stats.fidelity;
  result.abstain_rate = stats.abstain_rate;
  return result;
}

BaselineResult GreedyBaseline(const Dataset& dataset,
                              const BaselineConfig& config) {
  config.Validate();
  const auto sample_words = SampleWords(dataset);
  // word -> (samples containing it, per-class counts)
  std::map<std::string, std::pair<int, std::vector<int>>> counts;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const ClassId label = dataset.sample(i).predicted_label;
    for (const std::string& w : sample_words[i]) {
      auto& entry = counts[w];
      if (entry.second.empty()) entry.second.assign(dataset.num_classes(), 0);
      ++entry.first;
      ++entry.second[label];
    }
  }
  BaselineResult result;
  result.config = config;
  for (int c = 0; c < dataset.num_classes(); ++c) {
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [word, entry] : counts) {
      if (entry.second[c] == 0) continue;
      ranked.emplace_back(static_cast<double>(entry.second[c]) / entry.first,
                          word);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) {
                       if (a.first != b.first) return a.first > b.first;
                       return a.second < b.second;
                     });
    std::vector<std::string> words;
    for (std::size_t i = 0;
         i < ranked.size() && static_cast<int>(i) < config.n_words; ++i) {
      words.push_back(ranked[i].second);
    }
    std::sort(words.begin(), words.end());
    result.words.push_back(std::move(words));
  }
  const LabelingStats stats = LabelWithWordLists(dataset, result.words);
  result.fidelity = stats.fidelity;
  result.abstain_rate = stats.abstain_rate;
  return result;
}

BaselineResult RunBaseline(const Dataset& dataset,
                           const BaselineConfig& config) {
  return config.kind == BaselineKind::kRandom ? RandomBaseline(dataset, config)
                                              : GreedyBaseline(dataset, config);
}

// ---------------------------------------------------------------------------

EvalReport Evaluate(const Dataset& dataset, const MinedItemsets& mined,
                    const EvalOptions& options) {
  if (dataset.size() == 0) {
    throw Error(ErrorKind::kEmptyInput, "cannot evaluate an empty dataset");
  }
  options.objective.Validate();
  EvalReport report;
  report.seed = options.seed;
  const LabelingStats instance = LabelWithStore(dataset, mined);
  report.instance_fidelity = instance.fidelity;
  report.abstain_rate = instance.abstain_rate;
  report.class_explanations =
      ExplainClasses(dataset, mined, options.objective, options.jobs);
  report.classwise_fidelity =
      ClasswiseFidelity(report.class_explanations, dataset);
  for (const SweepConfig& sweep : options.sweeps) {
    auto curve = Sweep(dataset, mined, sweep, options.objective,
                       options.lambda, options.jobs);
    report.curves.insert(report.curves.end(), curve.begin(), curve.end());
  }
  for (const BaselineConfig& baseline : options.baselines) {
    report.baselines.push_back(RunBaseline(dataset, baseline));
  }
  return report;
}

WeightSearchResult GridSearchWeights(const Dataset& dataset,
                                     const MiningParams& mining,
                                     const ObjectiveConfig& base,
                                     std::span<const double> values,
                                     int folds, std::uint64_t seed,
                                     int jobs) {
  if (values.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "weight grid is empty");
  }
  if (folds < 2 || static_cast<std::size_t>(folds) > dataset.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "folds must be in [2, number of samples]");
  }
  mining.Validate();

  std::vector<SampleIndex> order(dataset.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = static_cast<SampleIndex>(i);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[UniformBelow(rng, i)]);
  }
  struct Fold {
    Dataset train;
    Dataset test;
    MinedItemsets mined;
  };
  std::vector<Fold> parts;
  for (int f = 0; f < folds; ++f) {
    std::vector<SampleIndex> train;
    std::vector<SampleIndex> test;
    for (std::size_t i = 0; i < order.size(); ++i) {
      (static_cast<int>(i % folds) == f ? test : train).push_back(order[i]);
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    Dataset train_ds = dataset.Subset(train);
    MinedItemsets mined = MineAll(train_ds, mining, jobs);
    parts.push_back({std::move(train_ds), dataset.Subset(test),
                     std::move(mined)});
  }

  WeightSearchResult result;
  const std::size_t v = values.size();
  std::size_t combos = 1;
  for (int i = 0; i < 6; ++i) combos *= v;
  for (std::size_t code = 0; code < combos; ++code) {
    WeightTrial trial;
    std::size_t rest = code;
    bool any = false;
    for (int i = 5; i >= 0; --i) {
      trial.weights[i] = values[rest % v];
      rest /= v;
      any = any || trial.weights[i] > 0.0;
    }
    if (!any) continue;
    ObjectiveConfig cfg = base;
    cfg.weights = trial.weights;
    double total = 0.0;
    for (const Fold& part : parts) {
      const auto explanations =
          ExplainClasses(part.train, part.mined, cfg, jobs);
      total += ClasswiseFidelity(explanations, part.test);
    }
    trial.score = total / folds;
    if (result.trials.empty() || trial.score > result.best.score) {
      result.best = trial;
    }
    result.trials.push_back(trial);
  }
  return result;
}

}  // namespace cie
