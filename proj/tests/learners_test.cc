// Copyright 2026 The SIRM Authors.
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

#include "sirm/learners.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sirm/experiment.h"
#include "sirm/scenarios.h"

namespace sirm {
namespace {

FeatureFamily Single(FeatureMap m) {
  return FeatureFamily({std::move(m)}, FeatureFamily::Provenance::kExplicit);
}

LabeledSet PanelSource(Panel panel, int n, uint64_t seed) {
  return Sample(ShiftPanel(panel).source, n, SeedSpec{seed, 1});
}

// Frequency with which `learner` picks the y projection over `seeds` seeds.
template <typename Fn>
int CountY(int seeds, Fn learner) {
  int count = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    if (learner(static_cast<uint64_t>(seed)) == 1) ++count;
  }
  return count;
}

TEST(DirectGeneralizeTest, SingletonFamilyUsesFinalQuarter) {
  const LabeledSet s = PanelSource(Panel::kA, 103, 1);
  const LearnerOutput out =
      DirectGeneralizeNN(s, Single(FeatureMap::Identity(2)), {});
  EXPECT_EQ(out.chosen_map_index, 0);
  EXPECT_EQ(out.classifier.train().size(), 103 - 3 * 25);
  EXPECT_EQ(out.classifier.train().point(0), s.point(75));
  EXPECT_EQ(out.classifier.k(), KSchedule::LogSquared().KOfN(28));
  ASSERT_EQ(out.diagnostics.size(), 1u);
}

TEST(DirectGeneralizeTest, PanelAChoosesY) {
  const FeatureFamily fam = ShiftPanel(Panel::kA).family;
  EXPECT_GE(CountY(50,
                   [&](uint64_t seed) {
                     return DirectGeneralizeNN(PanelSource(Panel::kA, 2000,
                                                           seed),
                                               fam, {})
                         .chosen_map_index;
                   }),
            48);
}

TEST(DirectGeneralizeTest, EqualMarginsPickSmallestIndex) {
  // Two parameterizations of the same projection behave identically.
  const FeatureMap a = FeatureMap::CoordinateSubset(2, {1});
  const FeatureMap b = FeatureMap::Linear(2, 1, {0.0, 1.0});
  const LabeledSet s = PanelSource(Panel::kA, 400, 2);
  for (const auto& fam :
       {FeatureFamily({a, b}, FeatureFamily::Provenance::kExplicit),
        FeatureFamily({b, a}, FeatureFamily::Provenance::kExplicit)}) {
    const LearnerOutput out = DirectGeneralizeNN(s, fam, {});
    ASSERT_TRUE(out.diagnostics[0].admitted && out.diagnostics[1].admitted);
    EXPECT_EQ(*out.diagnostics[0].source_margin,
              *out.diagnostics[1].source_margin);
    EXPECT_EQ(out.chosen_map_index, 0);
  }
}

TEST(DirectGeneralizeTest, AdmissionSoundness) {
  const FeatureFamily fam = FeatureFamily::FullCor(2, 1);
  for (auto mode : {LearnerConfig::Admission::kAbsolute,
                    LearnerConfig::Admission::kRelativeToBest}) {
    LearnerConfig cfg;
    cfg.admission = mode;
    for (uint64_t seed = 0; seed < 5; ++seed) {
      const LabeledSet s = PanelSource(Panel::kA, 800, seed);
      const LearnerOutput out = DirectGeneralizeNN(s, fam, cfg);
      double best = 1.0;
      for (const auto& d : out.diagnostics) {
        best = std::min(best, d.source_loss->value);
      }
      for (const auto& d : out.diagnostics) {
        if (!d.admitted) continue;
        if (mode == LearnerConfig::Admission::kAbsolute) {
          EXPECT_LT(d.source_loss->value, out.epsilon);
        } else {
          EXPECT_LE(d.source_loss->value, best + out.epsilon);
        }
      }
      if (!out.fallback) {
        EXPECT_TRUE(out.diagnostics[out.chosen_map_index].admitted);
      }
    }
  }
}

TEST(DirectGeneralizeTest, EmptyAdmissionFallsBackToMinLoss) {
  LearnerConfig cfg;
  cfg.admission = LearnerConfig::Admission::kAbsolute;
  cfg.epsilon_rule = LearnerConfig::EpsilonRule::kFixed;
  cfg.epsilon_value = 0.0;
  const LabeledSet s = PanelSource(Panel::kA, 400, 3);
  const LearnerOutput out =
      DirectGeneralizeNN(s, FeatureFamily::FullCor(2, 1), cfg);
  EXPECT_TRUE(out.fallback);
  EXPECT_EQ(out.chosen_map_index, 1);
}

TEST(DirectGeneralizeTest, Errors) {
  EXPECT_THROW(DirectGeneralizeNN(PanelSource(Panel::kA, 7, 0),
                                  FeatureFamily::FullCor(2, 1), {}),
               Error);
  LearnerConfig bad;
  bad.lambda = 2.0;
  EXPECT_THROW(DirectGeneralizeNN(PanelSource(Panel::kA, 40, 0),
                                  FeatureFamily::FullCor(2, 1), bad),
               Error);
}

TEST(PresrvContractTest, PanelBChoosesY) {
  const ShiftProblem p = ShiftPanel(Panel::kB);
  EXPECT_GE(CountY(50,
                   [&](uint64_t seed) {
                     const TrialData d = GenerateTrialData(p, 2000, 50, 1,
                                                           seed);
                     return PresrvContractNN(
                                d.source, UnlabeledSet::FromLabeled(d.target),
                                p.family, {})
                         .chosen_map_index;
                   }),
            48);
}

TEST(PresrvContractTest, SourceAsTargetReducesToMarginMaximization) {
  const ShiftProblem p = ShiftPanel(Panel::kC);
  const LabeledSet s = Sample(p.source, 500, SeedSpec{4, 1});
  // Fourth fifth is [300, 400) with blocks of 10; seed each block's target.
  UnlabeledSet u(2);
  for (int i = 0; i < 10; ++i) u.Add(s.point(300 + 10 * i + i));
  const LearnerOutput out = PresrvContractNN(s, u, p.family, {});
  int best = -1;
  for (const auto& d : out.diagnostics) {
    EXPECT_EQ(*d.target_margin, 0.0);
    if (d.admitted &&
        (best < 0 || *d.source_margin > *out.diagnostics[best].source_margin)) {
      best = d.map_index;
    }
  }
  EXPECT_EQ(out.chosen_map_index, best);
}

TEST(PresrvContractTest, SingletonAndClassifierOnTrainingFifth) {
  const LabeledSet s = PanelSource(Panel::kB, 57, 5);
  const LearnerOutput out = PresrvContractNN(
      s, UnlabeledSet(2, {Point{9, 9}}),
      Single(FeatureMap::CoordinateSubset(2, {0})), {});
  EXPECT_EQ(out.chosen_map_index, 0);
  EXPECT_EQ(out.classifier.train().size(), 11);
  EXPECT_EQ(out.classifier.k(), KSchedule::LogSquared().KOfN(11));
}

TEST(PresrvContractTest, ScoreDominanceAndBlindness) {
  const ShiftProblem p = ShiftPanel(Panel::kC);
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const TrialData d = GenerateTrialData(p, 1000, 40, 1, seed);
    const LearnerOutput out = PresrvContractNN(
        d.source, UnlabeledSet::FromLabeled(d.target), p.family, {});
    for (const auto& diag : out.diagnostics) {
      if (diag.admitted) {
        EXPECT_GE(*out.diagnostics[out.chosen_map_index].score, *diag.score);
      }
    }
    // Relabel the target arbitrarily: the choice cannot move.
    LabeledSet relabeled(2, 2);
    for (int i = 0; i < d.target.size(); ++i) {
      relabeled.Add(d.target.point(i), static_cast<Label>(i % 2));
    }
    const LearnerOutput again = RunRegime(Regime::kUnlabeled, d.source,
                                          relabeled, p, {});
    EXPECT_EQ(again.chosen_map_index, out.chosen_map_index);
  }
}

TEST(PresrvContractTest, InfiniteSourceMarginDominates) {
  // One class only: every pair agrees, so both margins are infinite.
  LabeledSet s(2, 2);
  std::mt19937_64 g(6);
  for (int i = 0; i < 50; ++i) s.Add(oracle::RandomPoint(g, 2), 0);
  const LearnerOutput out = PresrvContractNN(
      s, UnlabeledSet(2, {Point{5, 5}}), FeatureFamily::FullCor(2, 1), {});
  EXPECT_TRUE(std::isinf(*out.diagnostics[0].score));
  EXPECT_EQ(out.chosen_map_index, 0);
}

TEST(PresrvContractTest, Errors) {
  const FeatureFamily fam = FeatureFamily::FullCor(2, 1);
  EXPECT_THROW(PresrvContractNN(PanelSource(Panel::kB, 9, 0),
                                UnlabeledSet(2, {Point{0, 0}}), fam, {}),
               Error);
  EXPECT_THROW(
      PresrvContractNN(PanelSource(Panel::kB, 40, 0), UnlabeledSet(2), fam, {}),
      Error);
}

TEST(FeatureValidateTest, PanelCChoosesUnifyingMap) {
  const ShiftProblem p = ShiftPanel(Panel::kC);
  EXPECT_GE(CountY(50,
                   [&](uint64_t seed) {
                     const TrialData d = GenerateTrialData(p, 2000, 25, 1,
                                                           seed);
                     return FeatureValidate(d.source, d.target, p.family, 58)
                         .chosen_map_index;
                   }),
            48);
}

TEST(FeatureValidateTest, TargetLabeledByAFamilyMember) {
  const ShiftProblem p = ShiftPanel(Panel::kC);
  const LabeledSet s = Sample(p.source, 300, SeedSpec{7, 1});
  const LabeledSet raw = Sample(p.target, 40, SeedSpec{7, 2});
  for (int m = 0; m < 2; ++m) {
    const KnnClassifier labeler(s, 5, p.family.map(m));
    LabeledSet t(2, 2);
    for (const Point& x : raw.points()) t.Add(x, labeler.Predict(x));
    const LearnerOutput out = FeatureValidate(s, t, p.family, 5);
    EXPECT_EQ(out.diagnostics[m].target_loss->miscount, 0);
    EXPECT_EQ(out.diagnostics[out.chosen_map_index].target_loss->miscount, 0);
    EXPECT_EQ(out.classifier.train().size(), 300);
  }
}

TEST(FeatureValidateTest, SingletonAndErrors) {
  const LabeledSet s = PanelSource(Panel::kC, 30, 8);
  const auto fam = Single(FeatureMap::CoordinateSubset(2, {0}));
  EXPECT_EQ(FeatureValidate(s, s.Slice(0, 5), fam, 3).chosen_map_index, 0);
  EXPECT_THROW(FeatureValidate(s, LabeledSet(2, 2), fam, 3), Error);
}

TEST(LearnerDeterminismTest, IdenticalInputsIdenticalOutputs) {
  const ShiftProblem p = ShiftPanel(Panel::kB);
  const TrialData d = GenerateTrialData(p, 600, 30, 1, 9);
  const auto u = UnlabeledSet::FromLabeled(d.target);
  const LearnerOutput a = PresrvContractNN(d.source, u, p.family, {});
  const LearnerOutput b = PresrvContractNN(d.source, u, p.family, {});
  EXPECT_EQ(a.chosen_map_index, b.chosen_map_index);
  ASSERT_EQ(a.diagnostics.size(), b.diagnostics.size());
  for (size_t i = 0; i < a.diagnostics.size(); ++i) {
    EXPECT_EQ(*a.diagnostics[i].score, *b.diagnostics[i].score);
    EXPECT_EQ(a.diagnostics[i].source_loss->miscount,
              b.diagnostics[i].source_loss->miscount);
  }
}

TEST(TargetSampleBudgetTest, ArithmeticOracle) {
  // (16 ln 2016 + ln 20) / 0.01 = 12473.77
  EXPECT_EQ(TargetSampleBudget(16, 2000, 0.1, 0.05, 1.0), 12474);
  const double expected =
      (16 * std::log(2016.0) + std::log(20.0)) / (0.1 * 0.1);
  EXPECT_NEAR(TargetSampleBudgetRaw(16, 2000, 0.1, 0.05, 1.0), expected,
              1e-9 * expected);
}

TEST(TargetSampleBudgetTest, HalvingEpsilonQuadruples) {
  for (double eps : {0.4, 0.2, 0.1, 0.03}) {
    const double a = TargetSampleBudgetRaw(9, 500, eps, 0.1, 2.0);
    const double b = TargetSampleBudgetRaw(9, 500, eps / 2, 0.1, 2.0);
    EXPECT_NEAR(b, 4 * a, 1e-12 * b);
  }
}

TEST(TargetSampleBudgetTest, MonotoneInDelta) {
  int64_t last = 0;
  for (double delta : {0.5, 0.2, 0.1, 0.01, 0.001}) {
    const int64_t b = TargetSampleBudget(4, 1000, 0.2, delta, 1.0);
    EXPECT_GE(b, last);
    last = b;
  }
  EXPECT_THROW(TargetSampleBudget(4, 1000, 1.5, 0.1, 1.0), Error);
}

}  // namespace
}  // namespace sirm
