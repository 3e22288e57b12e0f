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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cie/error.h"
#include "cie/lexicon.h"
#include "test_support.h"

namespace cie {
namespace {

using ::cie::testing::DataPath;
using ::cie::testing::MakeToy6;

std::vector<SampleIndex> Ordinals(std::span<const SampleIndex> s) {
  return {s.begin(), s.end()};
}

ErrorKind KindOf(const std::string& text, const LoadOptions& options = {}) {
  std::istringstream in(text);
  try {
    LoadDataset(in, options);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kIo;
}

TEST(LoadDatasetTest, Toy6FileCounts) {
  const Dataset ds = LoadDatasetFile(DataPath("toy6.jsonl"), {});
  EXPECT_EQ(ds.size(), 6u);
  ASSERT_EQ(ds.num_classes(), 2);
  EXPECT_EQ(ds.class_size(0), 3u);
  EXPECT_EQ(ds.class_size(1), 3u);
  EXPECT_EQ(ds.num_concepts(), 3);
}

TEST(LoadDatasetTest, EmptyConceptListIsKept) {
  const std::string text =
      "{\"classes\": [\"A\"]}\n"
      "{\"id\": \"x\", \"text\": \"\", \"concepts\": [], "
      "\"predicted_label\": \"A\"}\n";
  std::istringstream in(text);
  const Dataset ds = LoadDataset(in, {});
  EXPECT_EQ(ds.size(), 1u);
  EXPECT_TRUE(ds.sample(0).concepts.empty());
  EXPECT_EQ(ds.num_concepts(), 0);
}

TEST(LoadDatasetTest, UndeclaredClassIsSchemaError) {
  EXPECT_EQ(KindOf("{\"classes\": [\"A\"]}\n"
                   "{\"id\": \"x\", \"concepts\": [], "
                   "\"predicted_label\": \"Z\"}\n"),
            ErrorKind::kSchema);
}

TEST(LoadDatasetTest, MalformedLineNamesLineNumber) {
  std::istringstream in("{\"classes\": [\"A\"]}\n{\"id\": oops}\n");
  try {
    LoadDataset(in, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(LoadDatasetTest, EmptyInputs) {
  EXPECT_EQ(KindOf(""), ErrorKind::kEmptyInput);
  EXPECT_EQ(KindOf("{\"classes\": [\"A\"]}\n"), ErrorKind::kEmptyInput);
}

TEST(LoadDatasetTest, DuplicateClassNames) {
  EXPECT_EQ(KindOf("{\"classes\": [\"A\", \"A\"]}\n"
                   "{\"id\": \"x\", \"concepts\": [], "
                   "\"predicted_label\": \"A\"}\n"),
            ErrorKind::kSchema);
}

TEST(LoadDatasetTest, PreAnnotatedRequiresConcepts) {
  EXPECT_EQ(KindOf("{\"classes\": [\"A\"]}\n"
                   "{\"id\": \"x\", \"text\": \"t\", "
                   "\"predicted_label\": \"A\"}\n"),
            ErrorKind::kSchema);
}

TEST(LoadDatasetTest, LexiconModeAnnotatesText) {
  const Lexicon lexicon = Lexicon::LoadFile(DataPath("lexicon.tsv"));
  LoadOptions options{AnnotationMode::kLexicon, &lexicon};
  const Dataset ds = LoadDatasetFile(DataPath("clinical.jsonl"), options);
  ASSERT_EQ(ds.size(), 4u);
  auto ids = [&](int s) {
    std::vector<std::string> out;
    for (ConceptIndex c : ds.sample(s).concepts) {
      out.push_back(ds.concept_id(c));
    }
    return out;
  };
  EXPECT_EQ(ids(0), (std::vector<std::string>{"D1", "T1"}));
  EXPECT_EQ(ids(1), (std::vector<std::string>{"T2"}));
  EXPECT_EQ(ids(2), (std::vector<std::string>{"D2", "T3"}));
  EXPECT_EQ(ids(3), (std::vector<std::string>{"T2"}));
  ASSERT_TRUE(ds.sample(1).gold_label.has_value());
  EXPECT_EQ(*ds.sample(1).gold_label, 1);
}

TEST(LoadDatasetTest, LexiconModeWithoutLexicon) {
  LoadOptions options{AnnotationMode::kLexicon, nullptr};
  EXPECT_EQ(KindOf("{\"classes\": [\"A\"]}\n", options),
            ErrorKind::kInvalidArgument);
}

TEST(LoadDatasetTest, TokenFallbackMode) {
  LoadOptions options{AnnotationMode::kTokenFallback, nullptr};
  std::istringstream in(
      "{\"classes\": [\"A\"]}\n"
      "{\"id\": \"x\", \"text\": \"The CAT sat on 2 mats, cat!\", "
      "\"predicted_label\": \"A\"}\n");
  const Dataset ds = LoadDataset(in, options);
  std::vector<std::string> ids;
  for (ConceptIndex c : ds.sample(0).concepts) ids.push_back(ds.concept_id(c));
  EXPECT_EQ(ids, (std::vector<std::string>{"cat", "mats", "sat", "the"}));
}

TEST(AnnotateTest, LongestMatch) {
  Lexicon lexicon;
  lexicon.Add("combination chemotherapy", "T1");
  EXPECT_EQ(Annotate("combination chemotherapy is the cornerstone", lexicon),
            (std::vector<std::string>{"T1"}));
}

TEST(AnnotateTest, EmptyText) {
  Lexicon lexicon;
  lexicon.Add("aspirin", "T2");
  EXPECT_TRUE(Annotate("", lexicon).empty());
}

TEST(AnnotateTest, DuplicatesCollapse) {
  Lexicon lexicon;
  lexicon.Add("aspirin", "T2");
  EXPECT_EQ(Annotate("aspirin aspirin", lexicon),
            (std::vector<std::string>{"T2"}));
}

TEST(AnnotateTest, LongestMatchDominates) {
  Lexicon lexicon;
  lexicon.Add("x y", "XY");
  lexicon.Add("x", "X");
  EXPECT_EQ(Annotate("x y z", lexicon), (std::vector<std::string>{"XY"}));
  EXPECT_EQ(Annotate("x y then x", lexicon),
            (std::vector<std::string>{"X", "XY"}));
}

TEST(AnnotateTest, PunctuationAndCaseNormalize) {
  Lexicon lexicon;
  lexicon.Add("Small-Cell  Lung Cancer", "D1");
  EXPECT_EQ(Annotate("...SMALL cell, lung-cancer.", lexicon),
            (std::vector<std::string>{"D1"}));
}

TEST(AnnotateTest, WindowCapsMatchLength) {
  Lexicon lexicon(2);
  lexicon.Add("a b c", "ABC");
  lexicon.Add("a b", "AB");
  EXPECT_EQ(Annotate("a b c", lexicon), (std::vector<std::string>{"AB"}));
}

TEST(AnnotateTest, DeterministicAndIdempotent) {
  const Lexicon lexicon = Lexicon::LoadFile(DataPath("lexicon.tsv"));
  const std::string text =
      "chemotherapy, combination chemotherapy and small cell lung cancer";
  const auto first = Annotate(text, lexicon);
  EXPECT_EQ(first, Annotate(text, lexicon));
  EXPECT_EQ(first, (std::vector<std::string>{"D1", "T1", "T3"}));
}

TEST(LexiconTest, RejectsConflictsAndEmptySurface) {
  Lexicon lexicon;
  lexicon.Add("aspirin", "T2");
  lexicon.Add("ASPIRIN", "T2");  // same binding is fine
  EXPECT_EQ(lexicon.size(), 1u);
  EXPECT_THROW(lexicon.Add("aspirin", "T9"), Error);
  EXPECT_THROW(lexicon.Add(" ,, ", "T9"), Error);
}

TEST(LexiconTest, MalformedLineReportsLine) {
  std::istringstream in("aspirin\tT2\tAspirin\nbroken line\n");
  try {
    Lexicon::Load(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(BuildIndexTest, Toy6Postings) {
  const Dataset ds = MakeToy6();
  const ConceptIndex a = *ds.FindConcept("a");
  EXPECT_EQ(Ordinals(ds.postings(a)), (std::vector<SampleIndex>{0, 1, 2}));
  EXPECT_EQ(Ordinals(ds.class_members(1)),
            (std::vector<SampleIndex>{3, 4, 5}));
}

TEST(BuildIndexTest, SingleSample) {
  const Dataset ds =
      Dataset::Build({{"x", "", {"q"}, 0, std::nullopt}}, {{0, "A"}});
  EXPECT_EQ(ds.postings(0).size(), 1u);
}

TEST(BuildIndexTest, InconsistentLabel) {
  EXPECT_THROW(
      Dataset::Build({{"x", "", {"q"}, 3, std::nullopt}}, {{0, "A"}}),
      Error);
}

TEST(BuildIndexTest, PostingsMatchBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Dataset ds = testing::RandomCorpus(rng, 40, 10, 3, 0.3);
    std::size_t total = 0;
    for (int q = 0; q < ds.num_classes(); ++q) total += ds.class_size(q);
    EXPECT_EQ(total, ds.size());
    for (ConceptIndex c = 0; c < ds.num_concepts(); ++c) {
      std::vector<SampleIndex> expected;
      for (std::size_t s = 0; s < ds.size(); ++s) {
        const auto& cs = ds.sample(s).concepts;
        if (std::find(cs.begin(), cs.end(), c) != cs.end()) {
          expected.push_back(static_cast<SampleIndex>(s));
        }
      }
      EXPECT_FALSE(expected.empty());
      EXPECT_EQ(Ordinals(ds.postings(c)), expected);
    }
  }
}

TEST(BuildIndexTest, SubsetSharesVocabulary) {
  const Dataset ds = MakeToy6();
  const std::vector<SampleIndex> pick{3, 4};
  const Dataset sub = ds.Subset(pick);
  EXPECT_EQ(sub.size(), 2u);
  EXPECT_EQ(sub.num_concepts(), ds.num_concepts());
  EXPECT_TRUE(sub.postings(*ds.FindConcept("a")).empty());
  EXPECT_EQ(sub.class_size(1), 2u);
}

}  // namespace
}  // namespace cie
