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

#include "cie/lexicon.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cie/error.h"

namespace cie {
namespace {

bool IsTokenChar(unsigned char c) { return std::isalnum(c) != 0 && c < 128; }

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsTokenChar(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string NormalizeSurface(std::string_view text) {
  std::string out;
  for (const std::string& token : Tokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

void Lexicon::Add(std::string_view surface, const std::string& concept_id,
                  const std::string& preferred_name) {
  std::string key = NormalizeSurface(surface);
  if (key.empty()) {
    throw Error(ErrorKind::kParse, "empty surface form for concept '" +
                                       concept_id + "'");
  }
  if (concept_id.empty()) {
    throw Error(ErrorKind::kParse, "empty concept id for '" + key + "'");
  }
  auto [it, inserted] = entries_.emplace(key, concept_id);
  if (!inserted && it->second != concept_id) {
    throw Error(ErrorKind::kParse, "surface form '" + key +
                                       "' bound to both '" + it->second +
                                       "' and '" + concept_id + "'");
  }
  concepts_.try_emplace(concept_id, Concept{concept_id, preferred_name});
  const int length =
      static_cast<int>(std::count(key.begin(), key.end(), ' ')) + 1;
  longest_entry_ = std::max(longest_entry_, length);
}

const std::string* Lexicon::Find(const std::string& normalized) const {
  auto it = entries_.find(normalized);
  return it == entries_.end() ? nullptr : &it->second;
}

const Concept* Lexicon::FindConcept(const std::string& concept_id) const {
  auto it = concepts_.find(concept_id);
  return it == concepts_.end() ? nullptr : &it->second;
}

Lexicon Lexicon::Load(std::istream& in, int max_window) {
  if (max_window < 1) {
    throw Error(ErrorKind::kInvalidArgument, "lexicon window must be >= 1");
  }
  Lexicon lexicon(max_window);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) fields.push_back(field);
    if (fields.size() < 2 || fields.size() > 3) {
      throw Error(ErrorKind::kParse,
                  "lexicon line " + std::to_string(line_no) +
                      ": expected surface<TAB>concept_id<TAB>preferred_name");
    }
    try {
      lexicon.Add(fields[0], fields[1], fields.size() == 3 ? fields[2] : "");
    } catch (const Error& e) {
      throw Error(ErrorKind::kParse, "lexicon line " +
                                         std::to_string(line_no) + ": " +
                                         e.what());
    }
  }
  return lexicon;
}

Lexicon Lexicon::LoadFile(const std::string& path, int max_window) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open lexicon '" + path + "'");
  return Load(in, max_window);
}

std::vector<std::string> Annotate(std::string_view text,
                                  const Lexicon& lexicon) {
  const std::vector<std::string> tokens = Tokenize(text);
  const int window = std::min(lexicon.max_window(), lexicon.longest_entry());
  std::set<std::string> found;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    const std::size_t limit =
        std::min(tokens.size() - pos, static_cast<std::size_t>(window));
    // Build every phrase starting at pos, then test longest first.
    std::vector<std::string> phrases;
    std::string phrase;
    for (std::size_t len = 1; len <= limit; ++len) {
      if (len > 1) phrase.push_back(' ');
      phrase += tokens[pos + len - 1];
      phrases.push_back(phrase);
    }
    std::size_t matched = 0;
    for (std::size_t len = limit; len >= 1; --len) {
      if (const std::string* id = lexicon.Find(phrases[len - 1])) {
        found.insert(*id);
        matched = len;
        break;
      }
    }
    pos += matched == 0 ? 1 : matched;
  }
  return {found.begin(), found.end()};
}

std::vector<std::string> TokenConcepts(std::string_view text) {
  std::set<std::string> found;
  for (std::string& token : Tokenize(text)) {
    if (token.size() < 3) continue;
    if (!std::all_of(token.begin(), token.end(), [](char c) {
          return std::isalpha(static_cast<unsigned char>(c)) != 0;
        })) {
      continue;
    }
    found.insert(std::move(token));
  }
  return {found.begin(), found.end()};
}

}  // namespace cie
