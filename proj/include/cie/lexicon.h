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

// Text normalization and gazetteer concept annotation.

#ifndef CIE_LEXICON_H_
#define CIE_LEXICON_H_

#include <cstddef>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cie {

struct Concept {
  std::string id;
  std::string preferred_name;
};

// Lower-cases the text and splits it into maximal runs of ASCII letters and
// digits. Everything else (punctuation, whitespace, non-ASCII bytes) is a
// token boundary.
std::vector<std::string> Tokenize(std::string_view text);

// Tokenizes and re-joins with single spaces.
std::string NormalizeSurface(std::string_view text);

// Maps normalized surface forms to concept ids. Several surface forms may
// point at the same concept; one surface form maps to exactly one concept.
class Lexicon {
 public:
  static constexpr int kDefaultWindow = 6;

  Lexicon() = default;
  explicit Lexicon(int max_window) : max_window_(max_window) {}

  // Reads "surface<TAB>concept_id<TAB>preferred_name" lines. Blank lines and
  // lines starting with '#' are skipped. Throws Error(kParse) with the line
  // number on malformed input.
  static Lexicon Load(std::istream& in, int max_window = kDefaultWindow);
  static Lexicon LoadFile(const std::string& path,
                          int max_window = kDefaultWindow);

  // Throws Error(kParse) on an empty surface form or a surface form already
  // bound to a different concept.
  void Add(std::string_view surface, const std::string& concept_id,
           const std::string& preferred_name = "");

  // Exact lookup of an already-normalized surface form.
  const std::string* Find(const std::string& normalized) const;
  const Concept* FindConcept(const std::string& concept_id) const;

  int max_window() const { return max_window_; }
  std::size_t size() const { return entries_.size(); }
  // Length in tokens of the longest entry.
  int longest_entry() const { return longest_entry_; }

 private:
  std::map<std::string, std::string> entries_;
  std::map<std::string, Concept> concepts_;
  int max_window_ = kDefaultWindow;
  int longest_entry_ = 0;
};

// Greedy left-to-right longest-match annotation. At each token position the
// longest lexicon entry of at most max_window tokens is taken and the scan
// skips past it; otherwise the scan advances by one token. Returns the sorted
// set of matched concept ids.
std::vector<std::string> Annotate(std::string_view text,
                                  const Lexicon& lexicon);

// Distinct lower-cased purely alphabetic tokens of length >= 3, sorted.
std::vector<std::string> TokenConcepts(std::string_view text);

}  // namespace cie

#endif  // CIE_LEXICON_H_
