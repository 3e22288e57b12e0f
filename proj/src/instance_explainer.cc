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

#include "cie/instance_explainer.h"

#include <algorithm>
#include <cmath>

#include "cie/error.h"

namespace cie {
namespace {

bool ScoresTied(double a, double b) {
  return std::fabs(a - b) <= 1e-12 * std::max(std::fabs(a), std::fabs(b));
}

bool CapOrder(const ConfidentItemset& a, const ConfidentItemset& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.itemset.size() != b.itemset.size()) {
    return a.itemset.size() > b.itemset.size();
  }
  return a.itemset < b.itemset;
}

ClassVote Summarize(ClassId c, std::span<const ConfidentItemset> matched,
                    std::optional<int> cap) {
  ClassVote vote;
  vote.class_id = c;
  if (cap && static_cast<int>(matched.size()) > *cap) {
    std::vector<ConfidentItemset> kept(matched.begin(), matched.end());
    std::stable_sort(kept.begin(), kept.end(), CapOrder);
    kept.resize(*cap);
    return Summarize(c, kept, std::nullopt);
  }
  for (const ConfidentItemset& ci : matched) {
    vote.score += ci.confidence;
    vote.max_confidence = std::max(vote.max_confidence, ci.confidence);
    ++vote.count;
  }
  return vote;
}

}  // namespace

bool VoteBeats(const ClassVote& a, const ClassVote& b) {
  if (!ScoresTied(a.score, b.score)) return a.score > b.score;
  if (a.max_confidence != b.max_confidence) {
    return a.max_confidence > b.max_confidence;
  }
  if (a.count != b.count) return a.count > b.count;
  return a.class_id < b.class_id;
}

ClassId PickLabel(std::span<const ClassVote> votes) {
  const ClassVote* best = nullptr;
  for (const ClassVote& v : votes) {
    if (v.score <= 0.0) continue;
    if (best == nullptr || VoteBeats(v, *best)) best = &v;
  }
  return best == nullptr ? kAbstain : best->class_id;
}

std::vector<std::vector<ConfidentItemset>> MatchItemsets(
    const Sample& sample, const MinedItemsets& mined) {
  std::vector<std::vector<ConfidentItemset>> matched(mined.per_class.size());
  for (std::size_t c = 0; c < mined.per_class.size(); ++c) {
    for (const ConfidentItemset& ci : mined.per_class[c]) {
      if (ci.itemset.ContainedIn(sample.concepts)) matched[c].push_back(ci);
    }
  }
  return matched;
}

double ConfidenceScore(std::span<const ConfidentItemset> matched,
                       std::optional<int> cap) {
  if (cap && *cap < 1) {
    throw Error(ErrorKind::kInvalidArgument, "itemset cap must be >= 1");
  }
  return Summarize(0, matched, cap).score;
}

InstanceExplanation ExplainInstance(const Sample& sample,
                                    const MinedItemsets& mined,
                                    std::optional<int> cap) {
  if (cap && *cap < 1) {
    throw Error(ErrorKind::kInvalidArgument, "itemset cap must be >= 1");
  }
  InstanceExplanation e;
  e.sample_id = sample.id;
  e.matched = MatchItemsets(sample, mined);
  std::vector<ClassVote> votes;
  votes.reserve(e.matched.size());
  for (std::size_t c = 0; c < e.matched.size(); ++c) {
    votes.push_back(Summarize(static_cast<ClassId>(c), e.matched[c], cap));
    e.scores.push_back(votes.back().score);
  }
  e.surrogate_label = PickLabel(votes);
  return e;
}

ClassId SurrogateLabel(const Sample& sample, const MinedItemsets& mined,
                       std::optional<int> cap) {
  if (cap) return ExplainInstance(sample, mined, cap).surrogate_label;
  std::vector<ClassVote> votes(mined.per_class.size());
  for (std::size_t c = 0; c < mined.per_class.size(); ++c) {
    votes[c].class_id = static_cast<ClassId>(c);
    for (const ConfidentItemset& ci : mined.per_class[c]) {
      if (!ci.itemset.ContainedIn(sample.concepts)) continue;
      votes[c].score += ci.confidence;
      votes[c].max_confidence = std::max(votes[c].max_confidence,
                                         ci.confidence);
      ++votes[c].count;
    }
  }
  return PickLabel(votes);
}

}  // namespace cie
