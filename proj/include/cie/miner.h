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

// Level-wise mining of per-class confident itemsets.
//
// An itemset is confident for class q when the fraction of the samples
// containing it that the black-box assigned to q reaches min_conf, and every
// one of its proper subsets is itself confident for q.

#ifndef CIE_MINER_H_
#define CIE_MINER_H_

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "cie/corpus.h"

namespace cie {

// Sorted, duplicate-free concept indices.
struct Itemset {
  std::vector<ConceptIndex> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  auto operator<=>(const Itemset&) const = default;
  bool operator==(const Itemset&) const = default;

  // True when every concept of this itemset is in the sorted list.
  bool ContainedIn(std::span<const ConceptIndex> sorted_concepts) const;
  bool Overlaps(const Itemset& other) const;
};

struct ConfidentItemset {
  Itemset itemset;
  ClassId class_id = 0;
  double confidence = 0.0;
  int support_total = 0;
  int support_class = 0;

  bool operator==(const ConfidentItemset&) const = default;
};

// Order inside one class's list: shorter first, then higher confidence, then
// lexicographic concepts.
bool StoreOrder(const ConfidentItemset& a, const ConfidentItemset& b);

struct MiningParams {
  double min_conf = 0.8;
  int max_k = 3;
  int min_support = 1;

  // Throws Error(kInvalidArgument) unless 0 < min_conf <= 1, max_k >= 1 and
  // min_support >= 1.
  void Validate() const;
};

struct MinedItemsets {
  // Indexed by ClassId; each list in StoreOrder.
  std::vector<std::vector<ConfidentItemset>> per_class;

  const std::vector<ConfidentItemset>& ForClass(ClassId c) const {
    return per_class[c];
  }
  std::size_t total() const;
  bool operator==(const MinedItemsets&) const = default;
};

struct ConfidenceResult {
  double confidence = 0.0;
  int support_total = 0;
  int support_class = 0;
};

// support_class / support_total. Throws Error(kZeroSupport) when no sample
// contains the itemset.
ConfidenceResult Confidence(const Itemset& itemset, ClassId class_id,
                            const Dataset& dataset);

std::vector<ConfidentItemset> MineClass(ClassId class_id,
                                        const Dataset& dataset,
                                        const MiningParams& params);

// Runs MineClass for every class, on up to `jobs` threads. The result does
// not depend on the thread count.
MinedItemsets MineAll(const Dataset& dataset, const MiningParams& params,
                      int jobs = 1);

}  // namespace cie

#endif  // CIE_MINER_H_
