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

// Instance-wise explanations: the itemsets a sample contains, summed into a
// per-class confidence score, and the surrogate label with the best score.

#ifndef CIE_INSTANCE_EXPLAINER_H_
#define CIE_INSTANCE_EXPLAINER_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cie/corpus.h"
#include "cie/miner.h"

namespace cie {

// Surrogate outcome when no itemset of any class matches. Never equal to a
// class id, so it always counts as a disagreement with the black-box.
inline constexpr ClassId kAbstain = -1;

struct InstanceExplanation {
  std::string sample_id;
  std::vector<std::vector<ConfidentItemset>> matched;  // by class, store order
  std::vector<double> scores;                          // by class
  ClassId surrogate_label = kAbstain;
};

// Summary of one class's matched itemsets as used by the label vote.
struct ClassVote {
  ClassId class_id = 0;
  double score = 0.0;
  double max_confidence = 0.0;
  int count = 0;
};

// Strict "a wins over b": higher score, then higher best single confidence,
// then more matched itemsets, then the smaller class id. Scores within a
// relative 1e-12 of each other are treated as tied.
bool VoteBeats(const ClassVote& a, const ClassVote& b);

// Index of the winning vote, or kAbstain when every score is zero.
ClassId PickLabel(std::span<const ClassVote> votes);

std::vector<std::vector<ConfidentItemset>> MatchItemsets(
    const Sample& sample, const MinedItemsets& mined);

// Sum of confidences. With a cap, only the top `cap` itemsets by
// (confidence desc, length desc, lexicographic) are summed.
double ConfidenceScore(std::span<const ConfidentItemset> matched,
                       std::optional<int> cap = std::nullopt);

InstanceExplanation ExplainInstance(const Sample& sample,
                                    const MinedItemsets& mined,
                                    std::optional<int> cap = std::nullopt);

// Label only, without materializing the matched lists.
ClassId SurrogateLabel(const Sample& sample, const MinedItemsets& mined,
                       std::optional<int> cap = std::nullopt);

}  // namespace cie

#endif  // CIE_INSTANCE_EXPLAINER_H_
