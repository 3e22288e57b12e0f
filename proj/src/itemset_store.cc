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

#include "cie/itemset_store.h"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include "cie/error.h"
#include "json.hpp"

namespace cie {

using nlohmann::ordered_json;

void WriteItemsetStore(std::ostream& out, const MinedItemsets& mined,
                       const Dataset& dataset,
                       const std::optional<MiningParams>& params) {
  ordered_json header;
  ordered_json classes = ordered_json::array();
  for (const ClassLabel& c : dataset.classes()) classes.push_back(c.name);
  header["classes"] = classes;
  if (params) {
    header["min_conf"] = params->min_conf;
    header["max_k"] = params->max_k;
    header["min_support"] = params->min_support;
  }
  header["count"] = mined.total();
  out << header.dump() << '\n';
  for (const auto& list : mined.per_class) {
    for (const ConfidentItemset& ci : list) {
      ordered_json record;
      record["class"] = dataset.class_name(ci.class_id);
      ordered_json concepts = ordered_json::array();
      for (ConceptIndex c : ci.itemset.items) {
        concepts.push_back(dataset.concept_id(c));
      }
      record["concepts"] = concepts;
      record["confidence"] = ci.confidence;
      record["support_total"] = ci.support_total;
      record["support_class"] = ci.support_class;
      out << record.dump() << '\n';
    }
  }
}

MinedItemsets ReadItemsetStore(std::istream& in, const Dataset& dataset) {
  MinedItemsets mined;
  mined.per_class.resize(dataset.num_classes());
  std::string line;
  int line_no = 0;
  bool have_header = false;
  auto fail = [&](ErrorKind kind, const std::string& what) {
    throw Error(kind, "itemset store line " + std::to_string(line_no) + ": " +
                          what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json record;
    try {
      record = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      fail(ErrorKind::kParse, e.what());
    }
    if (!have_header) {
      if (!record.contains("classes") || !record["classes"].is_array()) {
        fail(ErrorKind::kParse, "expected a header with 'classes'");
      }
      const auto& classes = record["classes"];
      if (classes.size() != dataset.classes().size()) {
        fail(ErrorKind::kSchema, "class list does not match the dataset");
      }
      for (std::size_t i = 0; i < classes.size(); ++i) {
        if (!classes[i].is_string() ||
            classes[i].get<std::string>() != dataset.classes()[i].name) {
          fail(ErrorKind::kSchema, "class list does not match the dataset");
        }
      }
      have_header = true;
      continue;
    }
    try {
      ConfidentItemset ci;
      const auto class_id =
          dataset.FindClass(record.at("class").get<std::string>());
      if (!class_id) fail(ErrorKind::kSchema, "unknown class");
      ci.class_id = *class_id;
      for (const auto& c : record.at("concepts")) {
        const auto index = dataset.FindConcept(c.get<std::string>());
        if (!index) {
          fail(ErrorKind::kSchema,
               "concept '" + c.get<std::string>() + "' not in dataset");
        }
        ci.itemset.items.push_back(*index);
      }
      if (ci.itemset.empty() ||
          std::adjacent_find(ci.itemset.items.begin(), ci.itemset.items.end(),
                             std::greater_equal<>()) !=
              ci.itemset.items.end()) {
        fail(ErrorKind::kSchema, "concepts must be non-empty and sorted");
      }
      ci.confidence = record.at("confidence").get<double>();
      ci.support_total = record.at("support_total").get<int>();
      ci.support_class = record.at("support_class").get<int>();
      if (ci.confidence < 0.0 || ci.confidence > 1.0) {
        fail(ErrorKind::kSchema, "confidence outside [0, 1]");
      }
      mined.per_class[ci.class_id].push_back(std::move(ci));
    } catch (const ordered_json::exception& e) {
      fail(ErrorKind::kParse, e.what());
    }
  }
  if (!have_header) {
    throw Error(ErrorKind::kParse, "itemset store has no header");
  }
  for (auto& list : mined.per_class) {
    std::stable_sort(list.begin(), list.end(), StoreOrder);
  }
  return mined;
}

void WriteItemsetStoreFile(const std::string& path, const MinedItemsets& mined,
                           const Dataset& dataset,
                           const std::optional<MiningParams>& params) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  WriteItemsetStore(out, mined, dataset, params);
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

MinedItemsets ReadItemsetStoreFile(const std::string& path,
                                   const Dataset& dataset) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open itemset store '" + path +
                                           "'");
  return ReadItemsetStore(in, dataset);
}

void WriteMiningSummary(std::ostream& out, const MinedItemsets& mined,
                        const Dataset& dataset) {
  std::size_t max_k = 0;
  for (const auto& list : mined.per_class) {
    for (const auto& ci : list) max_k = std::max(max_k, ci.itemset.size());
  }
  out << std::left << std::setw(24) << "class";
  for (std::size_t k = 1; k <= max_k; ++k) {
    out << std::right << std::setw(8) << ("K=" + std::to_string(k));
  }
  out << std::right << std::setw(8) << "total" << '\n';
  for (int c = 0; c < dataset.num_classes(); ++c) {
    std::vector<int> counts(max_k + 1, 0);
    for (const auto& ci : mined.ForClass(c)) ++counts[ci.itemset.size()];
    out << std::left << std::setw(24) << dataset.class_name(c);
    for (std::size_t k = 1; k <= max_k; ++k) {
      out << std::right << std::setw(8) << counts[k];
    }
    out << std::right << std::setw(8) << mined.ForClass(c).size() << '\n';
  }
  out << std::left << std::setw(24) << "all" << std::right
      << std::setw(8 * static_cast<int>(max_k) + 8) << mined.total() << '\n';
}

}  // namespace cie
