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

#include "sirm/experiment.h"

namespace sirm {

Regime ParseRegime(const std::string& id) {
  if (id == "source-only") return Regime::kSourceOnly;
  if (id == "unlabeled") return Regime::kUnlabeled;
  if (id == "validate") return Regime::kValidate;
  if (id == "oracle") return Regime::kOracle;
  throw Error("unknown learner '" + id +
              "' (expected source-only, unlabeled, validate or oracle)");
}

std::string RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kSourceOnly:
      return "source-only";
    case Regime::kUnlabeled:
      return "unlabeled";
    case Regime::kValidate:
      return "validate";
    case Regime::kOracle:
      return "oracle";
  }
  return "?";
}

TrialData GenerateTrialData(const ShiftProblem& problem, int n, int m,
                            int eval_n, uint64_t seed) {
  return TrialData{
      .source = Sample(problem.source, n, SeedSpec{seed, 1}),
      .target = Sample(problem.target, m, SeedSpec{seed, 2}),
      .target_eval = Sample(problem.target, eval_n, SeedSpec{seed, 3}),
      .source_eval = Sample(problem.source, eval_n, SeedSpec{seed, 4})};
}

LearnerOutput RunRegime(Regime regime, const LabeledSet& s,
                        const LabeledSet& target, const ShiftProblem& problem,
                        const LearnerConfig& cfg) {
  switch (regime) {
    case Regime::kSourceOnly:
      return DirectGeneralizeNN(s, problem.family, cfg);
    case Regime::kUnlabeled:
      return PresrvContractNN(s, UnlabeledSet::FromLabeled(target),
                              problem.family, cfg);
    case Regime::kValidate:
      if (s.empty()) throw Error("validate: empty source sample");
      return FeatureValidate(s, target, problem.family,
                             cfg.k_schedule.KOfN(s.size()));
    case Regime::kOracle: {
      if (problem.ground_truth.empty()) {
        throw Error("oracle: the problem declares no ground-truth map");
      }
      if (s.empty()) throw Error("oracle: empty source sample");
      const int index = problem.ground_truth.front();
      return LearnerOutput{
          .learner = "oracle",
          .chosen_map_index = index,
          .classifier = KnnClassifier(s, cfg.k_schedule.KOfN(s.size()),
                                      problem.family.map(index)),
          .epsilon = 0.0,
          .fallback = false,
          .diagnostics = {}};
    }
  }
  throw Error("unknown regime");
}

}  // namespace sirm
