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

// One seeded trial of a shift problem: the data draw shared by the CLI's
// scenario, train and sweep commands, and the dispatch to a learner.

#ifndef SIRM_EXPERIMENT_H_
#define SIRM_EXPERIMENT_H_

#include <cstdint>
#include <string>

#include "sirm/core.h"
#include "sirm/learners.h"
#include "sirm/scene.h"

namespace sirm {

enum class Regime {
  kSourceOnly,  // DirectGeneralizeNN
  kUnlabeled,   // PresrvContractNN
  kValidate,    // FeatureValidate
  kOracle,      // k-NN through the first ground-truth map, all of s
};

// "source-only", "unlabeled", "validate", "oracle".
Regime ParseRegime(const std::string& id);
std::string RegimeName(Regime regime);

struct TrialData {
  LabeledSet source;       // n draws from the source
  LabeledSet target;       // m draws from the target; labels hidden from
                           // the unlabeled regime
  LabeledSet target_eval;  // held-out target draws for risk
  LabeledSet source_eval;  // held-out source draws for risk
};

// Each part has its own stream under `seed`, so changing one size never
// changes the draws of another part.
TrialData GenerateTrialData(const ShiftProblem& problem, int n, int m,
                            int eval_n, uint64_t seed);

// `target` is read only by the validate regime and only its points by the
// unlabeled regime. Validate uses k = cfg.k_schedule.KOfN(|s|).
LearnerOutput RunRegime(Regime regime, const LabeledSet& s,
                        const LabeledSet& target, const ShiftProblem& problem,
                        const LearnerConfig& cfg);

}  // namespace sirm

#endif  // SIRM_EXPERIMENT_H_
