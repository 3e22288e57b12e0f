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

#include "cie/class_explainer.h"

#include <gtest/gtest.h>

#include <random>

#include "cie/error.h"
#include "test_support.h"

namespace cie {
namespace {

using ::cie::testing::BruteForceBest;
using ::cie::testing::MakeToy6;
using ::cie::testing::RandomCorpus;

class Toy6Test : public ::testing::Test {
 protected:
  Toy6Test() : ds_(MakeToy6()) {
    MiningParams p;
    p.min_conf = 0.6;
    mined_ = MineAll(ds_, p);
    const auto& b = mined_.ForClass(1);
    b_ = b[0];
    c_ = b[1];
    bc_ = b[2];
  }

  ObjectiveConfig Theta(int t1, int t2, int t3) const {
    ObjectiveConfig cfg;
    cfg.theta1 = t1;
    cfg.theta2 = t2;
    cfg.theta3 = t3;
    return cfg;
  }

  Dataset ds_;
  MinedItemsets mined_;
  ConfidentItemset b_, c_, bc_;
};

TEST_F(Toy6Test, Fidelity) {
  const std::vector<ConfidentItemset> bc_singletons{b_, c_};
  const std::vector<ConfidentItemset> pair{bc_};
  EXPECT_DOUBLE_EQ(Fidelity(bc_singletons, 1, ds_, mined_), 1.0);
  EXPECT_NEAR(Fidelity(pair, 1, ds_, mined_), 1.0 / 3.0, 1e-12);
  EXPECT_EQ(Fidelity({}, 1, ds_, mined_), 0.0);
  EXPECT_EQ(Fidelity({}, 0, ds_, mined_), 0.0);
}

TEST_F(Toy6Test, FidelityUndefinedSubspace) {
  const Dataset ds =
      Dataset::Build({{"x", "", {"a"}, 0, std::nullopt}}, {{0, "A"}, {1, "B"}});
  try {
    Fidelity({}, 1, ds, mined_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUndefinedSubspace);
  }
}

TEST_F(Toy6Test, InterpretabilityProperties) {
  const std::vector<ConfidentItemset> all{b_, c_, bc_};
  EXPECT_EQ(InterpretabilityProperties(all),
            (InterpretabilityCounts{3, 4, 2, 2}));
  EXPECT_EQ(InterpretabilityProperties({}), (InterpretabilityCounts{}));
  const std::vector<ConfidentItemset> singles{b_, c_};
  EXPECT_EQ(InterpretabilityProperties(singles),
            (InterpretabilityCounts{2, 2, 1, 0}));
}

TEST_F(Toy6Test, Coverage) {
  const std::vector<ConfidentItemset> singles{b_, c_};
  const std::vector<ConfidentItemset> pair{bc_};
  EXPECT_EQ(Coverage(singles, 1, ds_), 3);
  EXPECT_EQ(Coverage(pair, 1, ds_), 1);
  EXPECT_EQ(Coverage({}, 1, ds_), 0);
}

TEST_F(Toy6Test, Objective) {
  const std::vector<ConfidentItemset> singles{b_, c_};
  EXPECT_NEAR(Objective(singles, 1, ds_, mined_, Theta(3, 6, 3)),
              1.0 + 1.0 / 3 + 4.0 / 6 + 2.0 / 3 + 1.0 + 1.0, 1e-9);
  EXPECT_NEAR(Objective({}, 1, ds_, mined_, Theta(3, 6, 3)), 4.0, 1e-12);

  ObjectiveConfig only_fidelity = Theta(3, 6, 3);
  only_fidelity.weights = {1, 0, 0, 0, 0, 0};
  const std::vector<ConfidentItemset> pair{bc_};
  EXPECT_DOUBLE_EQ(Objective(pair, 1, ds_, mined_, only_fidelity),
                   Fidelity(pair, 1, ds_, mined_));
}

TEST_F(Toy6Test, ObjectiveRawRewards) {
  ObjectiveConfig cfg = Theta(3, 6, 3);
  cfg.normalize_rewards = false;
  const std::vector<ConfidentItemset> singles{b_, c_};
  // 1 + (3-2) + (6-2) + (3-1) + (3-0) + 3
  EXPECT_NEAR(Objective(singles, 1, ds_, mined_, cfg), 14.0, 1e-12);
}

TEST_F(Toy6Test, ObjectiveRejectsInfeasible) {
  const std::vector<ConfidentItemset> all{b_, c_, bc_};
  try {
    Objective(all, 1, ds_, mined_, Theta(2, 6, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasible);
  }
  EXPECT_THROW(Objective(all, 1, ds_, mined_, Theta(3, 3, 3)), Error);
  EXPECT_THROW(Objective(all, 1, ds_, mined_, Theta(3, 6, 1)), Error);
}

TEST_F(Toy6Test, LocalSearchPicksB) {
  ObjectiveConfig cfg = Theta(2, 4, 2);
  const ClassExplanation e =
      LocalSearch(mined_.ForClass(1), 1, ds_, mined_, cfg);
  ASSERT_EQ(e.itemsets.size(), 1u);
  EXPECT_EQ(e.itemsets[0], b_);
  EXPECT_NEAR(e.objective, 2.0 / 3 + 0.5 + 0.75 + 0.5 + 1.0 + 2.0 / 3, 1e-9);
  const auto brute = BruteForceBest(mined_.ForClass(1), 1, ds_, mined_, cfg);
  EXPECT_NEAR(brute.objective, e.objective, 1e-12);
  EXPECT_EQ(e.properties.size, 1);
  EXPECT_EQ(e.properties.coverage, 2);
}

TEST_F(Toy6Test, LocalSearchSingleItemset) {
  // Singleton {b,c} (2.667 at unit weights) loses to the empty set (4.0).
  ObjectiveConfig cfg = Theta(3, 6, 3);
  const std::vector<ConfidentItemset> only{bc_};
  const ClassExplanation e = LocalSearch(only, 1, ds_, mined_, cfg);
  EXPECT_TRUE(e.itemsets.empty());
  EXPECT_NEAR(e.objective, 4.0, 1e-12);

  cfg.weights = {1, 0, 0, 0, 0, 0};
  const ClassExplanation f = LocalSearch(only, 1, ds_, mined_, cfg);
  ASSERT_EQ(f.itemsets.size(), 1u);
}

TEST_F(Toy6Test, LocalSearchAllSingletonsInfeasible) {
  ObjectiveConfig cfg = Theta(3, 6, 1);
  const std::vector<ConfidentItemset> only{bc_};
  const ClassExplanation e = LocalSearch(only, 1, ds_, mined_, cfg);
  EXPECT_TRUE(e.itemsets.empty());
  EXPECT_NEAR(e.objective, Objective({}, 1, ds_, mined_, cfg), 1e-12);
}

TEST_F(Toy6Test, GlobalExplanation) {
  const GlobalExplanation g = SelectGlobalExplanation(mined_, ds_, 3, 1.0);
  ASSERT_EQ(g.units.size(), 3u);
  EXPECT_EQ(g.units[0], mined_.ForClass(0)[0]);
  EXPECT_EQ(g.units[1], b_);
  EXPECT_EQ(g.units[2], c_);
  EXPECT_EQ(g.covered, 6);
  EXPECT_EQ(g.conflicted, 0);

  const GlobalExplanation one = SelectGlobalExplanation(mined_, ds_, 1, 1.0);
  ASSERT_EQ(one.units.size(), 1u);
  EXPECT_EQ(one.units[0], mined_.ForClass(0)[0]);
  EXPECT_EQ(one.covered, 3);

  EXPECT_THROW(SelectGlobalExplanation(mined_, ds_, 0, 1.0), Error);
}

TEST(GlobalExplanationTest, PenaltyAvoidsConflicts) {
  // "s" is covered by x (class A) and y (class B); B wins the vote there,
  // so picking y after x would flip s.
  const Dataset ds = Dataset::Build(
      {{"s", "", {"x", "y"}, 0, std::nullopt},
       {"t", "", {"x"}, 0, std::nullopt},
       {"u", "", {"y"}, 1, std::nullopt}},
      {{0, "A"}, {1, "B"}});
  MinedItemsets pool;
  pool.per_class.resize(2);
  ConfidentItemset x{Itemset{{*ds.FindConcept("x")}}, 0, 0.6, 2, 2};
  ConfidentItemset y{Itemset{{*ds.FindConcept("y")}}, 1, 0.9, 2, 1};
  pool.per_class[0] = {x};
  pool.per_class[1] = {y};
  const GlobalExplanation strict = SelectGlobalExplanation(pool, ds, 2, 2.0);
  ASSERT_EQ(strict.units.size(), 1u);
  EXPECT_EQ(strict.units[0], x);
  const GlobalExplanation lax = SelectGlobalExplanation(pool, ds, 2, 0.0);
  EXPECT_EQ(lax.units.size(), 2u);
  EXPECT_EQ(lax.conflicted, 1);
  EXPECT_EQ(lax.covered, 3);
}

TEST(SubspaceObjectiveTest, AgreesWithDirectRoute) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> theta(1, 4);
  for (int trial = 0; trial < 15; ++trial) {
    const Dataset ds = RandomCorpus(rng, 40, 9, 3, 0.4);
    MiningParams p;
    p.min_conf = 0.4;
    const MinedItemsets mined = MineAll(ds, p);
    ObjectiveConfig cfg;
    cfg.theta1 = theta(rng);
    cfg.theta2 = theta(rng) + 2;
    cfg.theta3 = std::min(3, theta(rng));
    for (int q = 0; q < ds.num_classes(); ++q) {
      if (ds.class_size(q) == 0) continue;
      const auto& ci = mined.ForClass(q);
      const std::size_t n = std::min<std::size_t>(ci.size(), 8);
      const SubspaceObjective fast(ci, q, ds, mined, cfg);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        std::vector<ConfidentItemset> items;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) {
            subset.push_back(static_cast<int>(i));
            items.push_back(ci[i]);
          }
        }
        const PropertyRecord p1 = fast.Properties(subset);
        const PropertyRecord p2 = ComputeProperties(items, q, ds, mined);
        EXPECT_EQ(p1.fidelity, p2.fidelity);
        EXPECT_EQ(p1.coverage, p2.coverage);
        EXPECT_EQ(p1.itemset_overlap, p2.itemset_overlap);
        EXPECT_EQ(fast.Feasible(subset),
                  SatisfiesConstraints(InterpretabilityProperties(items), cfg));
        if (fast.Feasible(subset)) {
          EXPECT_NEAR(fast.Value(subset),
                      Objective(items, q, ds, mined, cfg), 1e-12);
        }
      }
    }
  }
}

TEST(LocalSearchTest, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> theta(1, 4);
  std::uniform_real_distribution<double> weight(0.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const Dataset ds = RandomCorpus(rng, 45, 10, 3, 0.4);
    MiningParams p;
    p.min_conf = 0.4;
    const MinedItemsets mined = MineAll(ds, p);
    ObjectiveConfig cfg;
    cfg.theta1 = theta(rng);
    cfg.theta2 = theta(rng) + 1;
    cfg.theta3 = std::min(3, theta(rng));
    for (double& w : cfg.weights) w = weight(rng);
    for (int q = 0; q < ds.num_classes(); ++q) {
      if (ds.class_size(q) == 0 || mined.ForClass(q).empty()) continue;
      std::vector<ConfidentItemset> ci = mined.ForClass(q);
      if (ci.size() > 10) ci.resize(10);
      const ClassExplanation e = LocalSearch(ci, q, ds, mined, cfg);
      const auto counts = InterpretabilityProperties(e.itemsets);
      EXPECT_TRUE(SatisfiesConstraints(counts, cfg));
      EXPECT_NEAR(e.objective, Objective(e.itemsets, q, ds, mined, cfg),
                  1e-12);
      // Never worse than the best feasible singleton.
      for (const auto& item : ci) {
        const std::vector<ConfidentItemset> single{item};
        if (!SatisfiesConstraints(InterpretabilityProperties(single), cfg)) {
          continue;
        }
        EXPECT_GE(e.objective + 1e-12,
                  Objective(single, q, ds, mined, cfg));
      }
      const auto brute = BruteForceBest(ci, q, ds, mined, cfg);
      EXPECT_GE(e.objective, 0.2 * brute.objective);
      EXPECT_LE(e.objective, brute.objective + 1e-12);
      // Determinism.
      const ClassExplanation again = LocalSearch(ci, q, ds, mined, cfg);
      EXPECT_EQ(again.itemsets, e.itemsets);
    }
  }
}

TEST(ObjectiveConfigTest, Validation) {
  ObjectiveConfig cfg;
  EXPECT_NO_THROW(cfg.Validate(3));
  cfg.weights = {0, 0, 0, 0, 0, 0};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = ObjectiveConfig{};
  cfg.theta3 = 4;
  EXPECT_THROW(cfg.Validate(3), Error);
  cfg = ObjectiveConfig{};
  cfg.delta = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = ObjectiveConfig{};
  cfg.weights[2] = -1;
  EXPECT_THROW(cfg.Validate(), Error);
}

}  // namespace
}  // namespace cie
