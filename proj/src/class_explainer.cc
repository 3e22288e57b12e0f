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

#include "cie/class_explainer.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cie/error.h"
#include "cie/instance_explainer.h"
#include "cie/parallel.h"

namespace cie {

void ObjectiveConfig::Validate(int max_k) const {
  bool any_positive = false;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "objective weights must be finite and non-negative");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) {
    throw Error(ErrorKind::kInvalidArgument,
                "at least one objective weight must be positive");
  }
  if (theta1 < 1 || theta2 < 1 || theta3 < 1) {
    throw Error(ErrorKind::kInvalidArgument, "theta bounds must be >= 1");
  }
  if (max_k > 0 && theta3 > max_k) {
    throw Error(ErrorKind::kInvalidArgument,
                "theta3 must not exceed the mining max_k");
  }
  if (!(delta > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "delta must be positive");
  }
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
}

double Fidelity(std::span<const ConfidentItemset> candidate, ClassId class_id,
                const Dataset& dataset, const MinedItemsets& mined) {
  const auto members = dataset.class_members(class_id);
  if (members.empty()) {
    throw Error(ErrorKind::kUndefinedSubspace,
                "no sample is labeled '" + dataset.class_name(class_id) + "'");
  }
  MinedItemsets modified = mined;
  modified.per_class.resize(dataset.num_classes());
  modified.per_class[class_id].assign(candidate.begin(), candidate.end());
  int agree = 0;
  for (SampleIndex s : members) {
    if (SurrogateLabel(dataset.sample(s), modified) == class_id) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(members.size());
}

InterpretabilityCounts InterpretabilityProperties(
    std::span<const ConfidentItemset> candidate) {
  InterpretabilityCounts counts;
  counts.size = static_cast<int>(candidate.size());
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const int length = static_cast<int>(candidate[i].itemset.size());
    counts.num_concepts += length;
    counts.max_length = std::max(counts.max_length, length);
    for (std::size_t j = i + 1; j < candidate.size(); ++j) {
      if (candidate[i].itemset.Overlaps(candidate[j].itemset)) {
        ++counts.itemset_overlap;
      }
    }
  }
  return counts;
}

int Coverage(std::span<const ConfidentItemset> candidate, ClassId class_id,
             const Dataset& dataset) {
  int covered = 0;
  for (SampleIndex s : dataset.class_members(class_id)) {
    const auto& concepts = dataset.sample(s).concepts;
    if (std::any_of(candidate.begin(), candidate.end(),
                    [&](const ConfidentItemset& ci) {
                      return ci.itemset.ContainedIn(concepts);
                    })) {
      ++covered;
    }
  }
  return covered;
}

bool SatisfiesConstraints(const InterpretabilityCounts& counts,
                          const ObjectiveConfig& cfg) {
  return counts.size <= cfg.theta1 && counts.num_concepts <= cfg.theta2 &&
         counts.max_length <= cfg.theta3;
}

std::array<double, 6> Rewards(const PropertyRecord& p, std::size_t class_size,
                              const ObjectiveConfig& cfg) {
  const double t1 = cfg.theta1;
  const double t2 = cfg.theta2;
  const double t3 = cfg.theta3;
  const double pairs = t1 * (t1 - 1.0) / 2.0;
  std::array<double, 6> f{};
  f[0] = p.fidelity;
  if (cfg.normalize_rewards) {
    const double pair_bound = std::max(1.0, pairs);
    f[1] = (t1 - p.size) / t1;
    f[2] = (t2 - p.num_concepts) / t2;
    f[3] = (t3 - p.max_length) / t3;
    f[4] = (pair_bound - p.itemset_overlap) / pair_bound;
    f[5] = class_size == 0 ? 0.0
                           : static_cast<double>(p.coverage) /
                                 static_cast<double>(class_size);
  } else {
    f[1] = t1 - p.size;
    f[2] = t2 - p.num_concepts;
    f[3] = t3 - p.max_length;
    f[4] = pairs - p.itemset_overlap;
    f[5] = p.coverage;
  }
  return f;
}

double WeightedObjective(const PropertyRecord& p, std::size_t class_size,
                         const ObjectiveConfig& cfg) {
  const auto f = Rewards(p, class_size, cfg);
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += cfg.weights[i] * f[i];
  return total;
}

PropertyRecord ComputeProperties(std::span<const ConfidentItemset> candidate,
                                 ClassId class_id, const Dataset& dataset,
                                 const MinedItemsets& mined) {
  const InterpretabilityCounts counts = InterpretabilityProperties(candidate);
  PropertyRecord p;
  p.fidelity = Fidelity(candidate, class_id, dataset, mined);
  p.size = counts.size;
  p.num_concepts = counts.num_concepts;
  p.max_length = counts.max_length;
  p.itemset_overlap = counts.itemset_overlap;
  p.coverage = Coverage(candidate, class_id, dataset);
  return p;
}

double Objective(std::span<const ConfidentItemset> candidate, ClassId class_id,
                 const Dataset& dataset, const MinedItemsets& mined,
                 const ObjectiveConfig& cfg) {
  if (!SatisfiesConstraints(InterpretabilityProperties(candidate), cfg)) {
    throw Error(ErrorKind::kInfeasible,
                "candidate violates the size, concept or length bound");
  }
  return WeightedObjective(
      ComputeProperties(candidate, class_id, dataset, mined),
      dataset.class_size(class_id), cfg);
}

// ---------------------------------------------------------------------------
// SubspaceObjective

SubspaceObjective::SubspaceObjective(std::span<const ConfidentItemset> pool,
                                     ClassId class_id, const Dataset& dataset,
                                     const MinedItemsets& mined,
                                     const ObjectiveConfig& cfg)
    : pool_(pool),
      class_id_(class_id),
      class_size_(dataset.class_size(class_id)),
      cfg_(cfg) {
  if (class_size_ == 0) {
    throw Error(ErrorKind::kUndefinedSubspace,
                "no sample is labeled '" + dataset.class_name(class_id) + "'");
  }
  const auto members = dataset.class_members(class_id);
  other_.resize(members.size());
  for (std::size_t pos = 0; pos < members.size(); ++pos) {
    const Sample& sample = dataset.sample(members[pos]);
    for (std::size_t c = 0; c < mined.per_class.size(); ++c) {
      if (static_cast<ClassId>(c) == class_id) continue;
      ClassVote vote;
      vote.class_id = static_cast<ClassId>(c);
      for (const ConfidentItemset& ci : mined.per_class[c]) {
        if (!ci.itemset.ContainedIn(sample.concepts)) continue;
        vote.score += ci.confidence;
        vote.max_confidence = std::max(vote.max_confidence, ci.confidence);
        ++vote.count;
      }
      if (vote.score > 0.0) other_[pos].push_back(vote);
    }
  }
  member_cover_.resize(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (SampleIndex s : dataset.Cover(pool[i].itemset.items)) {
      auto it = std::lower_bound(members.begin(), members.end(), s);
      if (it != members.end() && *it == s) {
        member_cover_[i].push_back(static_cast<int>(it - members.begin()));
      }
    }
  }
}

InterpretabilityCounts SubspaceObjective::Counts(
    std::span<const int> subset) const {
  InterpretabilityCounts counts;
  counts.size = static_cast<int>(subset.size());
  for (std::size_t a = 0; a < subset.size(); ++a) {
    const Itemset& x = pool_[subset[a]].itemset;
    const int length = static_cast<int>(x.size());
    counts.num_concepts += length;
    counts.max_length = std::max(counts.max_length, length);
    for (std::size_t b = a + 1; b < subset.size(); ++b) {
      if (x.Overlaps(pool_[subset[b]].itemset)) ++counts.itemset_overlap;
    }
  }
  return counts;
}

bool SubspaceObjective::Feasible(std::span<const int> subset) const {
  return SatisfiesConstraints(Counts(subset), cfg_);
}

PropertyRecord SubspaceObjective::Properties(
    std::span<const int> subset) const {
  const InterpretabilityCounts counts = Counts(subset);
  PropertyRecord p;
  p.size = counts.size;
  p.num_concepts = counts.num_concepts;
  p.max_length = counts.max_length;
  p.itemset_overlap = counts.itemset_overlap;

  std::vector<ClassVote> own(other_.size());
  for (int i : subset) {
    const double conf = pool_[i].confidence;
    for (int pos : member_cover_[i]) {
      ClassVote& v = own[pos];
      v.score += conf;
      v.max_confidence = std::max(v.max_confidence, conf);
      ++v.count;
    }
  }
  int agree = 0;
  std::vector<ClassVote> votes;
  for (std::size_t pos = 0; pos < own.size(); ++pos) {
    if (own[pos].count == 0) continue;
    ++p.coverage;
    own[pos].class_id = class_id_;
    // Same class order as the full vote so tie handling is identical.
    votes.clear();
    bool inserted = false;
    for (const ClassVote& o : other_[pos]) {
      if (!inserted && o.class_id > class_id_) {
        votes.push_back(own[pos]);
        inserted = true;
      }
      votes.push_back(o);
    }
    if (!inserted) votes.push_back(own[pos]);
    if (PickLabel(votes) == class_id_) ++agree;
  }
  p.fidelity = static_cast<double>(agree) / static_cast<double>(class_size_);
  return p;
}

double SubspaceObjective::Value(std::span<const int> subset) const {
  return WeightedObjective(Properties(subset), class_size_, cfg_);
}

// ---------------------------------------------------------------------------
// Local search

namespace {

struct SearchState {
  std::vector<int> members;  // ascending pool indices
  double value = 0.0;
};

std::vector<int> Without(const std::vector<int>& set,
                         std::span<const int> removed) {
  std::vector<int> out;
  out.reserve(set.size());
  std::set_difference(set.begin(), set.end(), removed.begin(), removed.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> WithInserted(std::vector<int> set, int element) {
  set.insert(std::lower_bound(set.begin(), set.end(), element), element);
  return set;
}

// Visits every size-r combination of `items` in lexicographic position order
// until `visit` returns true.
bool ForEachCombination(const std::vector<int>& items, int r,
                        const std::function<bool(std::span<const int>)>& visit) {
  const int n = static_cast<int>(items.size());
  if (r > n) return false;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  std::vector<int> chosen(r);
  while (true) {
    for (int i = 0; i < r; ++i) chosen[i] = items[idx[i]];
    if (visit(chosen)) return true;
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

SearchState RunRound(const SubspaceObjective& objective,
                     const std::vector<int>& ground,
                     const ObjectiveConfig& cfg) {
  const double n = static_cast<double>(ground.size());
  const double factor = 1.0 + cfg.delta / (n * n * n * n);
  auto improves = [&](double candidate, double current) {
    return candidate > current && candidate >= factor * current;
  };

  SearchState state;
  bool have_start = false;
  for (int e : ground) {
    const std::vector<int> single{e};
    if (!objective.Feasible(single)) continue;
    const double v = objective.Value(single);
    if (!have_start || v > state.value ||
        (v == state.value &&
         objective.item(e).itemset <
             objective.item(state.members[0]).itemset)) {
      state.members = single;
      state.value = v;
      have_start = true;
    }
  }
  if (!have_start) {
    state.value = objective.Value({});
    return state;
  }

  while (true) {
    bool moved = false;
    for (int a : state.members) {
      const int removed[] = {a};
      std::vector<int> next = Without(state.members, removed);
      const double v = objective.Value(next);
      if (improves(v, state.value)) {
        state.members = std::move(next);
        state.value = v;
        moved = true;
        break;
      }
    }
    if (moved) continue;

    for (int b : ground) {
      if (std::binary_search(state.members.begin(), state.members.end(), b)) {
        continue;
      }
      const int max_removed =
          std::min<int>(cfg.k, static_cast<int>(state.members.size()));
      for (int r = 0; r <= max_removed && !moved; ++r) {
        moved = ForEachCombination(
            state.members, r, [&](std::span<const int> removed) {
              std::vector<int> next =
                  WithInserted(Without(state.members, removed), b);
              if (!objective.Feasible(next)) return false;
              const double v = objective.Value(next);
              if (!improves(v, state.value)) return false;
              state.members = std::move(next);
              state.value = v;
              return true;
            });
      }
      if (moved) break;
    }
    if (!moved) break;
  }
  return state;
}

}  // namespace

ClassExplanation LocalSearch(std::span<const ConfidentItemset> ci,
                             ClassId class_id, const Dataset& dataset,
                             const MinedItemsets& mined,
                             const ObjectiveConfig& cfg) {
  cfg.Validate();
  const SubspaceObjective objective(ci, class_id, dataset, mined, cfg);

  std::vector<int> ground(ci.size());
  for (std::size_t i = 0; i < ground.size(); ++i) {
    ground[i] = static_cast<int>(i);
  }
  SearchState best;
  best.value = objective.Value({});
  bool have_best = false;
  for (int round = 0; round <= cfg.k && !ground.empty(); ++round) {
    SearchState state = RunRound(objective, ground, cfg);
    if (!have_best || state.value > best.value) {
      best = state;
      have_best = true;
    }
    if (state.members.empty()) break;
    ground = Without(ground, state.members);
  }

  ClassExplanation out;
  out.class_id = class_id;
  for (int i : best.members) out.itemsets.push_back(ci[i]);
  out.properties = objective.Properties(best.members);
  out.objective = best.value;
  return out;
}

std::vector<ClassExplanation> ExplainClasses(const Dataset& dataset,
                                             const MinedItemsets& mined,
                                             const ObjectiveConfig& cfg,
                                             int jobs) {
  std::vector<ClassExplanation> out(dataset.num_classes());
  ParallelFor(out.size(), jobs, [&](std::size_t c) {
    const auto class_id = static_cast<ClassId>(c);
    if (dataset.class_size(class_id) == 0) {
      out[c].class_id = class_id;
      return;
    }
    out[c] = LocalSearch(mined.ForClass(class_id), class_id, dataset, mined,
                         cfg);
  });
  return out;
}

MinedItemsets AsStore(std::span<const ClassExplanation> explanations,
                      int num_classes) {
  MinedItemsets store;
  store.per_class.resize(num_classes);
  for (const ClassExplanation& e : explanations) {
    auto& list = store.per_class.at(e.class_id);
    list.insert(list.end(), e.itemsets.begin(), e.itemsets.end());
  }
  for (auto& list : store.per_class) {
    std::stable_sort(list.begin(), list.end(), StoreOrder);
  }
  return store;
}

// ---------------------------------------------------------------------------
// Global explanation

namespace {

struct SampleState {
  std::vector<ClassVote> votes;  // by class
  bool covered = false;
  bool conflicted = false;
};

bool IsConflicted(const std::vector<ClassVote>& votes, ClassId label) {
  int classes = 0;
  for (const ClassVote& v : votes) classes += v.count > 0 ? 1 : 0;
  return classes >= 2 && PickLabel(votes) != label;
}

}  // namespace

GlobalExplanation SelectGlobalExplanation(const MinedItemsets& pool,
                                          const Dataset& dataset, int gamma,
                                          double lambda) {
  if (gamma < 1) {
    throw Error(ErrorKind::kInvalidArgument, "gamma must be >= 1");
  }
  if (!(lambda >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "lambda must be >= 0");
  }
  std::vector<const ConfidentItemset*> units;
  for (const auto& list : pool.per_class) {
    for (const ConfidentItemset& ci : list) units.push_back(&ci);
  }
  std::vector<std::vector<SampleIndex>> covers(units.size());
  for (std::size_t u = 0; u < units.size(); ++u) {
    covers[u] = dataset.Cover(units[u]->itemset.items);
  }

  const int num_classes = dataset.num_classes();
  std::vector<SampleState> state(dataset.size());
  for (auto& s : state) {
    s.votes.resize(num_classes);
    for (int c = 0; c < num_classes; ++c) s.votes[c].class_id = c;
  }
  auto add_vote = [](ClassVote& v, double conf) {
    v.score += conf;
    v.max_confidence = std::max(v.max_confidence, conf);
    ++v.count;
  };

  std::vector<bool> taken(units.size(), false);
  GlobalExplanation out;
  for (int step = 0; step < gamma; ++step) {
    int best = -1;
    double best_gain = 0.0;
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (taken[u]) continue;
      const ConfidentItemset& unit = *units[u];
      double gain = 0.0;
      for (SampleIndex s : covers[u]) {
        const SampleState& st = state[s];
        const ClassId label = dataset.sample(s).predicted_label;
        if (!st.covered && unit.class_id == label) gain += 1.0;
        std::vector<ClassVote> votes = st.votes;
        add_vote(votes[unit.class_id], unit.confidence);
        const bool conflicted = IsConflicted(votes, label);
        gain -= lambda * ((conflicted ? 1.0 : 0.0) -
                          (st.conflicted ? 1.0 : 0.0));
      }
      bool better = false;
      if (best < 0) {
        better = true;
      } else if (gain != best_gain) {
        better = gain > best_gain;
      } else {
        const ConfidentItemset& incumbent = *units[best];
        if (unit.confidence != incumbent.confidence) {
          better = unit.confidence > incumbent.confidence;
        } else if (unit.itemset != incumbent.itemset) {
          better = unit.itemset < incumbent.itemset;
        } else {
          better = unit.class_id < incumbent.class_id;
        }
      }
      if (better) {
        best = static_cast<int>(u);
        best_gain = gain;
      }
    }
    if (best < 0 || best_gain <= 0.0) break;

    taken[best] = true;
    const ConfidentItemset& unit = *units[best];
    out.units.push_back(unit);
    for (SampleIndex s : covers[best]) {
      SampleState& st = state[s];
      const ClassId label = dataset.sample(s).predicted_label;
      add_vote(st.votes[unit.class_id], unit.confidence);
      if (unit.class_id == label) st.covered = true;
      st.conflicted = IsConflicted(st.votes, label);
    }
  }
  for (const SampleState& st : state) {
    out.covered += st.covered ? 1 : 0;
    out.conflicted += st.conflicted ? 1 : 0;
  }
  return out;
}

MinedItemsets AsStore(const GlobalExplanation& global, int num_classes) {
  MinedItemsets store;
  store.per_class.resize(num_classes);
  for (const ConfidentItemset& ci : global.units) {
    store.per_class.at(ci.class_id).push_back(ci);
  }
  for (auto& list : store.per_class) {
    std::stable_sort(list.begin(), list.end(), StoreOrder);
  }
  return store;
}

}  // namespace cie
