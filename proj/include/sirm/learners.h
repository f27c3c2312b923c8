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

// Feature-map selection for three data regimes: labeled source only,
// labeled source plus unlabeled target, and labeled source plus a small
// labeled target sample.

#ifndef SIRM_LEARNERS_H_
#define SIRM_LEARNERS_H_

#include <optional>
#include <string>
#include <vector>

#include "sirm/core.h"
#include "sirm/estimators.h"
#include "sirm/feature_map.h"
#include "sirm/knn.h"

namespace sirm {

struct LearnerConfig {
  enum class EpsilonRule { kPaperDefault, kFixed };  // n^(-1/3) or fixed
  enum class Admission { kAbsolute, kRelativeToBest };

  EpsilonRule epsilon_rule = EpsilonRule::kPaperDefault;
  double epsilon_value = 0.0;  // used with kFixed
  double lambda = 4.0;         // must exceed 2
  KSchedule k_schedule = KSchedule::LogSquared();
  Admission admission = Admission::kRelativeToBest;

  // Threshold for a source sample of size n; validates lambda.
  double Epsilon(int n) const;
  void Validate() const;
};

struct MapDiagnostics {
  int map_index = 0;
  std::optional<LossEstimate> source_loss;
  std::optional<MarginValue> source_margin;
  std::optional<double> target_margin;
  std::optional<LossEstimate> target_loss;
  std::optional<double> score;  // rho_s - lambda * rho_t (+inf allowed)
  bool admitted = false;
};

struct LearnerOutput {
  std::string learner;
  int chosen_map_index = 0;
  KnnClassifier classifier;
  double epsilon = 0.0;
  // True when no map passed admission and the min-loss map was used.
  bool fallback = false;
  std::vector<MapDiagnostics> diagnostics;
};

// Quarters the source sample into S_tr, S_loss, S_margin, S_final (in
// order), admits maps by their S_tr -> S_loss loss, and picks the admitted
// map with the largest source margin (smallest index on ties). The returned
// classifier is trained on S_final. Requires |s| >= 8.
LearnerOutput DirectGeneralizeNN(const LabeledSet& s,
                                 const FeatureFamily& family,
                                 const LearnerConfig& cfg);

// Fifths: S_tr, S_loss, S_margin, S_margin_t, S_final. Among admitted maps
// picks argmax rho_s - lambda * rho_t where rho_s = SourceMargin(S_tr,
// S_margin) and rho_t = TargetMargin(S_margin_t, u). An infinite rho_s beats
// every finite score. The classifier is trained on S_tr. Requires |s| >= 10
// and u non-empty.
LearnerOutput PresrvContractNN(const LabeledSet& s, const UnlabeledSet& u,
                               const FeatureFamily& family,
                               const LearnerConfig& cfg);

// Picks the map whose k-NN classifier over all of s has the lowest empirical
// risk on t (smallest index on ties) and returns that classifier.
LearnerOutput FeatureValidate(const LabeledSet& s, const LabeledSet& t,
                              const FeatureFamily& family, int k);

// ceil(c * (dd * ln(n + dd) + ln(1 / delta)) / epsilon^2).
int64_t TargetSampleBudget(double dd_upper, int n, double epsilon,
                           double delta, double c);
// The same quantity before rounding up.
double TargetSampleBudgetRaw(double dd_upper, int n, double epsilon,
                             double delta, double c);

}  // namespace sirm

#endif  // SIRM_LEARNERS_H_
