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

#include "cie/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "cie/error.h"
#include "json.hpp"

namespace cie {

AnnotationMode ParseAnnotationMode(std::string_view name) {
  if (name == "pre-annotated") return AnnotationMode::kPreAnnotated;
  if (name == "lexicon") return AnnotationMode::kLexicon;
  if (name == "token-fallback") return AnnotationMode::kTokenFallback;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown annotation mode '" + std::string(name) + "'");
}

const char* AnnotationModeName(AnnotationMode mode) {
  switch (mode) {
    case AnnotationMode::kPreAnnotated: return "pre-annotated";
    case AnnotationMode::kLexicon: return "lexicon";
    case AnnotationMode::kTokenFallback: return "token-fallback";
  }
  return "?";
}

Dataset Dataset::Build(std::vector<SampleRecord> samples,
                       std::vector<ClassLabel> classes) {
  if (classes.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no class labels declared");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].id != static_cast<ClassId>(i)) {
      throw Error(ErrorKind::kSchema, "class ids must be dense 0..Q-1");
    }
    if (classes[i].name.empty() || !names.insert(classes[i].name).second) {
      throw Error(ErrorKind::kSchema,
                  "class names must be unique and non-empty");
    }
  }
  const auto num_classes = static_cast<ClassId>(classes.size());

  std::set<std::string> vocabulary;
  for (const SampleRecord& record : samples) {
    if (record.predicted_label < 0 || record.predicted_label >= num_classes) {
      throw Error(ErrorKind::kSchema, "sample '" + record.id +
                                          "' has an undeclared predicted label");
    }
    if (record.gold_label &&
        (*record.gold_label < 0 || *record.gold_label >= num_classes)) {
      throw Error(ErrorKind::kSchema,
                  "sample '" + record.id + "' has an undeclared gold label");
    }
    for (const std::string& c : record.concepts) {
      if (c.empty()) {
        throw Error(ErrorKind::kSchema,
                    "sample '" + record.id + "' has an empty concept id");
      }
      vocabulary.insert(c);
    }
  }

  Dataset ds;
  ds.classes_ = std::move(classes);
  ds.concept_ids_.assign(vocabulary.begin(), vocabulary.end());
  for (std::size_t i = 0; i < ds.concept_ids_.size(); ++i) {
    ds.concept_lookup_.emplace(ds.concept_ids_[i],
                               static_cast<ConceptIndex>(i));
  }
  ds.samples_.reserve(samples.size());
  for (SampleRecord& record : samples) {
    Sample s;
    s.id = std::move(record.id);
    s.text = std::move(record.text);
    s.predicted_label = record.predicted_label;
    s.gold_label = record.gold_label;
    for (const std::string& c : record.concepts) {
      s.concepts.push_back(ds.concept_lookup_.at(c));
    }
    std::sort(s.concepts.begin(), s.concepts.end());
    s.concepts.erase(std::unique(s.concepts.begin(), s.concepts.end()),
                     s.concepts.end());
    ds.samples_.push_back(std::move(s));
  }
  ds.Reindex();
  return ds;
}

Dataset Dataset::Subset(std::span<const SampleIndex> ordinals) const {
  Dataset ds;
  ds.classes_ = classes_;
  ds.concept_ids_ = concept_ids_;
  ds.concept_lookup_ = concept_lookup_;
  for (SampleIndex i : ordinals) ds.samples_.push_back(samples_.at(i));
  ds.Reindex();
  return ds;
}

void Dataset::Reindex() {
  postings_.assign(concept_ids_.size(), {});
  class_members_.assign(classes_.size(), {});
  sample_lookup_.clear();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto ordinal = static_cast<SampleIndex>(i);
    const Sample& s = samples_[i];
    for (ConceptIndex c : s.concepts) postings_[c].push_back(ordinal);
    class_members_[s.predicted_label].push_back(ordinal);
    sample_lookup_.emplace(s.id, ordinal);
  }
}

std::optional<ConceptIndex> Dataset::FindConcept(std::string_view id) const {
  auto it = concept_lookup_.find(std::string(id));
  if (it == concept_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<ClassId> Dataset::FindClass(std::string_view name) const {
  for (const ClassLabel& c : classes_) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

std::optional<SampleIndex> Dataset::FindSample(std::string_view id) const {
  auto it = sample_lookup_.find(std::string(id));
  if (it == sample_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<SampleIndex> Dataset::Cover(
    std::span<const ConceptIndex> concepts) const {
  if (concepts.empty()) {
    std::vector<SampleIndex> all(samples_.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      all[i] = static_cast<SampleIndex>(i);
    }
    return all;
  }
  // Intersect starting from the shortest posting list.
  std::vector<ConceptIndex> order(concepts.begin(), concepts.end());
  std::sort(order.begin(), order.end(), [&](ConceptIndex a, ConceptIndex b) {
    return postings_[a].size() < postings_[b].size();
  });
  std::vector<SampleIndex> result = postings_[order[0]];
  std::vector<SampleIndex> next;
  for (std::size_t i = 1; i < order.size() && !result.empty(); ++i) {
    const auto& list = postings_[order[i]];
    next.clear();
    std::set_intersection(result.begin(), result.end(), list.begin(),
                          list.end(), std::back_inserter(next));
    result.swap(next);
  }
  return result;
}

namespace {

using nlohmann::json;

std::string LinePrefix(int line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

std::string RequireString(const json& record, const char* key, int line_no) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw Error(ErrorKind::kParse, LinePrefix(line_no) + "missing string '" +
                                       key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

Dataset LoadDataset(std::istream& in, const LoadOptions& options) {
  if (options.mode == AnnotationMode::kLexicon && options.lexicon == nullptr) {
    throw Error(ErrorKind::kInvalidArgument,
                "lexicon mode requires a lexicon");
  }
  std::vector<ClassLabel> classes;
  std::vector<SampleRecord> records;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::kParse, LinePrefix(line_no) + e.what());
    }
    if (!record.is_object()) {
      throw Error(ErrorKind::kParse, LinePrefix(line_no) + "not an object");
    }
    if (!have_header) {
      auto it = record.find("classes");
      if (it == record.end() || !it->is_array()) {
        throw Error(ErrorKind::kParse,
                    LinePrefix(line_no) + "expected a header with 'classes'");
      }
      for (const json& name : *it) {
        if (!name.is_string()) {
          throw Error(ErrorKind::kParse,
                      LinePrefix(line_no) + "class names must be strings");
        }
        classes.push_back({static_cast<ClassId>(classes.size()),
                           name.get<std::string>()});
      }
      have_header = true;
      continue;
    }

    SampleRecord s;
    s.id = RequireString(record, "id", line_no);
    s.text = record.contains("text") && record["text"].is_string()
                 ? record["text"].get<std::string>()
                 : std::string();
    const std::string predicted =
        RequireString(record, "predicted_label", line_no);
    auto find_class = [&](const std::string& name) {
      for (const ClassLabel& c : classes) {
        if (c.name == name) return c.id;
      }
      throw Error(ErrorKind::kSchema, LinePrefix(line_no) +
                                          "undeclared class '" + name + "'");
    };
    s.predicted_label = find_class(predicted);
    if (auto it = record.find("gold_label");
        it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw Error(ErrorKind::kParse,
                    LinePrefix(line_no) + "gold_label must be a string");
      }
      s.gold_label = find_class(it->get<std::string>());
    }

    switch (options.mode) {
      case AnnotationMode::kPreAnnotated: {
        auto it = record.find("concepts");
        if (it == record.end() || !it->is_array()) {
          throw Error(ErrorKind::kSchema,
                      LinePrefix(line_no) +
                          "pre-annotated mode requires a 'concepts' array");
        }
        for (const json& c : *it) {
          if (!c.is_string() || c.get<std::string>().empty()) {
            throw Error(ErrorKind::kParse,
                        LinePrefix(line_no) +
                            "concepts must be non-empty strings");
          }
          s.concepts.push_back(c.get<std::string>());
        }
        break;
      }
      case AnnotationMode::kLexicon:
        s.concepts = Annotate(s.text, *options.lexicon);
        break;
      case AnnotationMode::kTokenFallback:
        s.concepts = TokenConcepts(s.text);
        break;
    }
    records.push_back(std::move(s));
  }
  if (!have_header) {
    throw Error(ErrorKind::kEmptyInput, "dataset has no header record");
  }
  if (records.empty()) {
    throw Error(ErrorKind::kEmptyInput, "dataset has no samples");
  }
  std::set<std::string> ids;
  for (const SampleRecord& r : records) {
    if (!ids.insert(r.id).second) {
      throw Error(ErrorKind::kSchema, "duplicate sample id '" + r.id + "'");
    }
  }
  return Dataset::Build(std::move(records), std::move(classes));
}

Dataset LoadDatasetFile(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open dataset '" + path + "'");
  return LoadDataset(in, options);
}

}  // namespace cie
