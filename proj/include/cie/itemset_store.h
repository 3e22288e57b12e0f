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

// On-disk store of mined itemsets.
//
// Line-delimited JSON. The first line is a header carrying the class list
// and the mining parameters; every following line is one confident itemset:
//   {"class": "B", "concepts": ["b", "c"], "confidence": 1.0,
//    "support_total": 1, "support_class": 1}
// Records appear grouped by class id, each group in StoreOrder.

#ifndef CIE_ITEMSET_STORE_H_
#define CIE_ITEMSET_STORE_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "cie/corpus.h"
#include "cie/miner.h"

namespace cie {

void WriteItemsetStore(std::ostream& out, const MinedItemsets& mined,
                       const Dataset& dataset,
                       const std::optional<MiningParams>& params);

// Concept ids and class names resolve against `dataset`. Throws
// Error(kParse) on malformed lines and Error(kSchema) when the store's class
// list does not match the dataset or a concept is unknown.
MinedItemsets ReadItemsetStore(std::istream& in, const Dataset& dataset);

void WriteItemsetStoreFile(const std::string& path, const MinedItemsets& mined,
                           const Dataset& dataset,
                           const std::optional<MiningParams>& params);
MinedItemsets ReadItemsetStoreFile(const std::string& path,
                                   const Dataset& dataset);

// Plain-text table of itemset counts per class and length.
void WriteMiningSummary(std::ostream& out, const MinedItemsets& mined,
                        const Dataset& dataset);

}  // namespace cie

#endif  // CIE_ITEMSET_STORE_H_
