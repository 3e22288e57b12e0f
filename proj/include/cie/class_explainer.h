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

// Class-wise explanations: a constrained subset of one class's confident
// itemsets chosen to trade fidelity against interpretability and coverage,
// plus a budgeted cross-class global explanation.

#ifndef CIE_CLASS_EXPLAINER_H_
#define CIE_CLASS_EXPLAINER_H_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cie/corpus.h"
#include "cie/instance_explainer.h"
#include "cie/miner.h"

namespace cie {

struct InterpretabilityCounts {
  int size = 0;
  int num_concepts = 0;
  int max_length = 0;
  int itemset_overlap = 0;

  bool operator==(const InterpretabilityCounts&) const = default;
};

struct PropertyRecord {
  double fidelity = 0.0;
  int size = 0;
  int num_concepts = 0;
  int max_length = 0;
  int itemset_overlap = 0;
  int coverage = 0;
};

struct ObjectiveConfig {
  // fidelity, size, num_concepts, max_length, overlap, coverage
  std::array<double, 6> weights{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  int theta1 = 10;  // max itemsets
  int theta2 = 25;  // max total concepts
  int theta3 = 3;   // max itemset length
  double delta = 0.1;
  int k = 3;  // constraint count; also the exchange removal cap
  // When false the size/concept/length/overlap rewards are raw differences
  // from their bounds and coverage is a raw count.
  bool normalize_rewards = true;

  // Throws Error(kInvalidArgument). A positive max_k also bounds theta3.
  void Validate(int max_k = 0) const;
};

struct ClassExplanation {
  ClassId class_id = 0;
  std::vector<ConfidentItemset> itemsets;
  PropertyRecord properties;
  double objective = 0.0;
};

// Share of the class's samples the explainer still labels with the class
// when the class's itemset list is replaced by `candidate` and every other
// class keeps its full list. Throws Error(kUndefinedSubspace) when the
// black-box assigned no sample to the class.
double Fidelity(std::span<const ConfidentItemset> candidate, ClassId class_id,
                const Dataset& dataset, const MinedItemsets& mined);

InterpretabilityCounts InterpretabilityProperties(
    std::span<const ConfidentItemset> candidate);

// Samples of the class containing at least one candidate itemset.
int Coverage(std::span<const ConfidentItemset> candidate, ClassId class_id,
             const Dataset& dataset);

bool SatisfiesConstraints(const InterpretabilityCounts& counts,
                          const ObjectiveConfig& cfg);

std::array<double, 6> Rewards(const PropertyRecord& properties,
                              std::size_t class_size,
                              const ObjectiveConfig& cfg);

double WeightedObjective(const PropertyRecord& properties,
                         std::size_t class_size, const ObjectiveConfig& cfg);

PropertyRecord ComputeProperties(std::span<const ConfidentItemset> candidate,
                                 ClassId class_id, const Dataset& dataset,
                                 const MinedItemsets& mined);

// Throws Error(kInfeasible) when the candidate breaks a size, concept or
// length bound.
double Objective(std::span<const ConfidentItemset> candidate, ClassId class_id,
                 const Dataset& dataset, const MinedItemsets& mined,
                 const ObjectiveConfig& cfg);

// Evaluates the objective over subsets of a fixed pool, given as ascending
// pool indices. The other classes' votes and each itemset's cover within the
// class are computed once up front. Agrees with Objective() on every subset.
class SubspaceObjective {
 public:
  SubspaceObjective(std::span<const ConfidentItemset> pool, ClassId class_id,
                    const Dataset& dataset, const MinedItemsets& mined,
                    const ObjectiveConfig& cfg);

  PropertyRecord Properties(std::span<const int> subset) const;
  bool Feasible(std::span<const int> subset) const;
  double Value(std::span<const int> subset) const;

  std::size_t pool_size() const { return pool_.size(); }
  const ConfidentItemset& item(int i) const { return pool_[i]; }

 private:
  InterpretabilityCounts Counts(std::span<const int> subset) const;

  std::span<const ConfidentItemset> pool_;
  ClassId class_id_;
  std::size_t class_size_;
  ObjectiveConfig cfg_;
  // Non-zero votes of the other classes, by member position, in class order.
  std::vector<std::vector<ClassVote>> other_;
  std::vector<std::vector<int>> member_cover_;  // by pool index
};

// Approximate local search with delete and exchange moves over k + 1 rounds
// of shrinking ground sets; returns the best set found. A move is taken only
// if it raises the objective by a factor of at least 1 + delta / n^4.
ClassExplanation LocalSearch(std::span<const ConfidentItemset> ci,
                             ClassId class_id, const Dataset& dataset,
                             const MinedItemsets& mined,
                             const ObjectiveConfig& cfg);

// LocalSearch for every class, on up to `jobs` threads.
std::vector<ClassExplanation> ExplainClasses(const Dataset& dataset,
                                             const MinedItemsets& mined,
                                             const ObjectiveConfig& cfg,
                                             int jobs = 1);

// Packs explanations into a store, one list per class.
MinedItemsets AsStore(std::span<const ClassExplanation> explanations,
                      int num_classes);

struct GlobalExplanation {
  std::vector<ConfidentItemset> units;  // in selection order
  int covered = 0;     // samples covered by a unit of their own class
  int conflicted = 0;  // see SelectGlobalExplanation
};

// Greedily picks up to `gamma` units from the pool. Each step takes the unit
// with the largest gain in covered samples minus `lambda` times the gain in
// conflicted samples; ties go to higher confidence, then the smaller itemset,
// then the smaller class. A sample is conflicted when units of two or more
// classes cover it and their summed-confidence vote does not return its
// black-box label. Selection stops early once no unit has positive gain.
GlobalExplanation SelectGlobalExplanation(const MinedItemsets& pool,
                                          const Dataset& dataset, int gamma,
                                          double lambda = 1.0);

MinedItemsets AsStore(const GlobalExplanation& global, int num_classes);

}  // namespace cie

#endif  // CIE_CLASS_EXPLAINER_H_
