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

#include "cie/miner.h"

#include <algorithm>
#include <iterator>
#include <string>
#include <tuple>

#include "cie/error.h"
#include "cie/parallel.h"

namespace cie {

bool Itemset::ContainedIn(std::span<const ConceptIndex> sorted_concepts) const {
  return std::includes(sorted_concepts.begin(), sorted_concepts.end(),
                       items.begin(), items.end());
}

bool Itemset::Overlaps(const Itemset& other) const {
  auto a = items.begin();
  auto b = other.items.begin();
  while (a != items.end() && b != other.items.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

bool StoreOrder(const ConfidentItemset& a, const ConfidentItemset& b) {
  if (a.itemset.size() != b.itemset.size()) {
    return a.itemset.size() < b.itemset.size();
  }
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  return a.itemset < b.itemset;
}

void MiningParams::Validate() const {
  if (!(min_conf > 0.0 && min_conf <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "min_conf must be in (0, 1]");
  }
  if (max_k < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_k must be >= 1");
  }
  if (min_support < 1) {
    throw Error(ErrorKind::kInvalidArgument, "min_support must be >= 1");
  }
}

std::size_t MinedItemsets::total() const {
  std::size_t n = 0;
  for (const auto& list : per_class) n += list.size();
  return n;
}

namespace {

int CountInClass(std::span<const SampleIndex> cover, ClassId class_id,
                 const Dataset& dataset) {
  return static_cast<int>(
      std::count_if(cover.begin(), cover.end(), [&](SampleIndex s) {
        return dataset.sample(s).predicted_label == class_id;
      }));
}

// A confident itemset of the current level together with its cover, kept so
// the next level can extend covers by one intersection.
struct LevelEntry {
  Itemset itemset;
  std::vector<SampleIndex> cover;
  int support_class = 0;
};

bool Accept(int support_total, int support_class, const MiningParams& params,
            double* confidence) {
  if (support_total < params.min_support || support_total == 0) return false;
  *confidence = static_cast<double>(support_class) / support_total;
  return *confidence >= params.min_conf;
}

}  // namespace

ConfidenceResult Confidence(const Itemset& itemset, ClassId class_id,
                            const Dataset& dataset) {
  for (ConceptIndex c : itemset.items) {
    if (c < 0 || c >= dataset.num_concepts() || dataset.postings(c).empty()) {
      throw Error(ErrorKind::kZeroSupport,
                  "itemset contains a concept absent from the corpus");
    }
  }
  const std::vector<SampleIndex> cover = dataset.Cover(itemset.items);
  if (cover.empty()) {
    throw Error(ErrorKind::kZeroSupport, "itemset occurs in no sample");
  }
  ConfidenceResult r;
  r.support_total = static_cast<int>(cover.size());
  r.support_class = CountInClass(cover, class_id, dataset);
  r.confidence = static_cast<double>(r.support_class) / r.support_total;
  return r;
}

std::vector<ConfidentItemset> MineClass(ClassId class_id,
                                        const Dataset& dataset,
                                        const MiningParams& params) {
  params.Validate();
  std::vector<ConfidentItemset> out;

  // Level 1: concepts seen in at least one sample of the class.
  std::vector<ConceptIndex> seen;
  for (SampleIndex s : dataset.class_members(class_id)) {
    const auto& concepts = dataset.sample(s).concepts;
    seen.insert(seen.end(), concepts.begin(), concepts.end());
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());

  std::vector<LevelEntry> level;
  for (ConceptIndex c : seen) {
    auto postings = dataset.postings(c);
    const int total = static_cast<int>(postings.size());
    const int in_class = CountInClass(postings, class_id, dataset);
    double conf = 0.0;
    if (!Accept(total, in_class, params, &conf)) continue;
    out.push_back({Itemset{{c}}, class_id, conf, total, in_class});
    level.push_back({Itemset{{c}}, {postings.begin(), postings.end()},
                     in_class});
  }

  for (int k = 2; k <= params.max_k && level.size() >= 2; ++k) {
    // `level` is lexicographically sorted, so itemsets sharing a (k-2)-prefix
    // are contiguous.
    std::vector<LevelEntry> next;
    std::vector<SampleIndex> cover;
    Itemset subset;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto& a = level[i].itemset.items;
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        const auto& b = level[j].itemset.items;
        if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
        Itemset candidate = level[i].itemset;
        candidate.items.push_back(b.back());

        // Every (k-1)-subset must be confident. Dropping the last or the
        // second-to-last element gives a or b, so only the others are
        // checked.
        bool closed = true;
        for (int drop = 0; drop + 2 < k && closed; ++drop) {
          subset.items.clear();
          for (int m = 0; m < k; ++m) {
            if (m != drop) subset.items.push_back(candidate.items[m]);
          }
          closed = std::binary_search(
              level.begin(), level.end(), subset,
              [](const auto& x, const auto& y) {
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>,
                                             LevelEntry>) {
                  return x.itemset < y;
                } else {
                  return x < y.itemset;
                }
              });
        }
        if (!closed) continue;

        auto extra = dataset.postings(b.back());
        cover.clear();
        std::set_intersection(level[i].cover.begin(), level[i].cover.end(),
                              extra.begin(), extra.end(),
                              std::back_inserter(cover));
        const int total = static_cast<int>(cover.size());
        const int in_class = CountInClass(cover, class_id, dataset);
        double conf = 0.0;
        if (!Accept(total, in_class, params, &conf)) continue;
        out.push_back({candidate, class_id, conf, total, in_class});
        next.push_back({std::move(candidate), cover, in_class});
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }

  std::sort(out.begin(), out.end(), StoreOrder);
  return out;
}

MinedItemsets MineAll(const Dataset& dataset, const MiningParams& params,
                      int jobs) {
  params.Validate();
  MinedItemsets mined;
  mined.per_class.resize(dataset.num_classes());
  ParallelFor(mined.per_class.size(), jobs, [&](std::size_t c) {
    mined.per_class[c] =
        MineClass(static_cast<ClassId>(c), dataset, params);
  });
  return mined;
}

}  // namespace cie
