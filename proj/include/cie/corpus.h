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

// Samples, black-box predictions, and the inverted indexes over them.

#ifndef CIE_CORPUS_H_
#define CIE_CORPUS_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cie/lexicon.h"

namespace cie {

// Dense index of a concept within a Dataset's vocabulary. Indices are
// assigned in ascending order of the concept's string id, so comparing
// indices compares ids lexicographically.
using ConceptIndex = int;
using ClassId = int;
using SampleIndex = int;

struct ClassLabel {
  ClassId id = 0;
  std::string name;
};

// A sample as read from disk, before indexing.
struct SampleRecord {
  std::string id;
  std::string text;
  std::vector<std::string> concepts;
  ClassId predicted_label = 0;
  std::optional<ClassId> gold_label;
};

struct Sample {
  std::string id;
  std::string text;
  std::vector<ConceptIndex> concepts;  // sorted, unique
  ClassId predicted_label = 0;
  std::optional<ClassId> gold_label;
};

enum class AnnotationMode { kPreAnnotated, kLexicon, kTokenFallback };

AnnotationMode ParseAnnotationMode(std::string_view name);
const char* AnnotationModeName(AnnotationMode mode);

// Immutable after construction; safe for concurrent readers.
class Dataset {
 public:
  // Indexes the samples. Duplicate concepts inside one sample collapse.
  // Throws Error(kSchema) when a label is out of range or class names are
  // empty or repeated, Error(kEmptyInput) when there are no classes.
  static Dataset Build(std::vector<SampleRecord> samples,
                       std::vector<ClassLabel> classes);

  // Builds a dataset over a subset of this one's samples. The concept
  // vocabulary (and therefore every ConceptIndex) is shared with the parent.
  Dataset Subset(std::span<const SampleIndex> ordinals) const;

  std::size_t size() const { return samples_.size(); }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  int num_concepts() const { return static_cast<int>(concept_ids_.size()); }

  const Sample& sample(SampleIndex i) const { return samples_[i]; }
  const std::vector<Sample>& samples() const { return samples_; }
  const std::vector<ClassLabel>& classes() const { return classes_; }
  const std::string& class_name(ClassId c) const { return classes_[c].name; }
  const std::string& concept_id(ConceptIndex c) const {
    return concept_ids_[c];
  }

  // Sorted ordinals of the samples containing the concept.
  std::span<const SampleIndex> postings(ConceptIndex c) const {
    return postings_[c];
  }
  // Sorted ordinals of the samples the black-box assigned to the class.
  std::span<const SampleIndex> class_members(ClassId c) const {
    return class_members_[c];
  }
  std::size_t class_size(ClassId c) const { return class_members_[c].size(); }

  std::optional<ConceptIndex> FindConcept(std::string_view id) const;
  std::optional<ClassId> FindClass(std::string_view name) const;
  std::optional<SampleIndex> FindSample(std::string_view id) const;

  // Ordinals of the samples containing every concept of the sorted list.
  // An empty list yields every sample.
  std::vector<SampleIndex> Cover(std::span<const ConceptIndex> concepts) const;

 private:
  std::vector<Sample> samples_;
  std::vector<ClassLabel> classes_;
  std::vector<std::string> concept_ids_;
  std::vector<std::vector<SampleIndex>> postings_;
  std::vector<std::vector<SampleIndex>> class_members_;
  std::unordered_map<std::string, ConceptIndex> concept_lookup_;
  std::unordered_map<std::string, SampleIndex> sample_lookup_;

  void Reindex();
};

struct LoadOptions {
  AnnotationMode mode = AnnotationMode::kPreAnnotated;
  const Lexicon* lexicon = nullptr;  // required in lexicon mode
};

// Reads the line-delimited JSON dataset format:
//   {"classes": ["A", "B", ...]}                      (header, first line)
//   {"id": "s1", "text": "...", "concepts": [...], "predicted_label": "A",
//    "gold_label": "B"}                               (one per sample)
// Errors name the offending line.
Dataset LoadDataset(std::istream& in, const LoadOptions& options);
Dataset LoadDatasetFile(const std::string& path, const LoadOptions& options);

}  // namespace cie

#endif  // CIE_CORPUS_H_
