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
#include <limits>

namespace sirm {

double LearnerConfig::Epsilon(int n) const {
  if (epsilon_rule == EpsilonRule::kFixed) return epsilon_value;
  return std::pow(static_cast<double>(n), -1.0 / 3.0);
}

void LearnerConfig::Validate() const {
  if (!(lambda > 2.0)) throw Error("lambda must exceed 2");
  if (epsilon_rule == EpsilonRule::kFixed && !(epsilon_value >= 0.0)) {
    throw Error("fixed epsilon must be non-negative");
  }
}

namespace {

// Sets the admission flags. Returns true when nothing was admitted, in which
// case the caller falls back to the min-loss map.
bool Admit(const LearnerConfig& cfg, double epsilon,
           std::vector<MapDiagnostics>& diag) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& d : diag) best = std::min(best, d.source_loss->value);
  bool any = false;
  for (auto& d : diag) {
    const double loss = d.source_loss->value;
    d.admitted = cfg.admission == LearnerConfig::Admission::kAbsolute
                     ? loss < epsilon
                     : loss <= best + epsilon;
    any = any || d.admitted;
  }
  return !any;
}

int MinLossIndex(const std::vector<MapDiagnostics>& diag) {
  int best = 0;
  for (size_t i = 1; i < diag.size(); ++i) {
    if (diag[i].source_loss->value < diag[best].source_loss->value) best = i;
  }
  return best;
}

void CheckFamily(const FeatureFamily& family, const LabeledSet& s) {
  if (family.input_dim() != s.dim()) {
    throw Error("feature family input dimension does not match the data");
  }
}

}  // namespace

LearnerOutput DirectGeneralizeNN(const LabeledSet& s,
                                 const FeatureFamily& family,
                                 const LearnerConfig& cfg) {
  cfg.Validate();
  if (s.size() < 8) throw Error("direct_generalize_nn needs at least 8 points");
  CheckFamily(family, s);
  const double quarters[] = {0.25, 0.25, 0.25, 0.25};
  const auto parts = SplitFractions(s, quarters);
  const LabeledSet& s_tr = parts[0];
  const LabeledSet& s_loss = parts[1];
  const LabeledSet& s_margin = parts[2];
  const LabeledSet& s_final = parts[3];
  const int k_tr = cfg.k_schedule.KOfN(s_tr.size());
  const double epsilon = cfg.Epsilon(s.size());

  std::vector<MapDiagnostics> diag(family.size());
  for (int m = 0; m < family.size(); ++m) {
    diag[m].map_index = m;
    diag[m].source_loss = SourceLoss(family.map(m), s_tr, s_loss, k_tr);
  }
  const bool fallback = Admit(cfg, epsilon, diag);
  int chosen = -1;
  for (int m = 0; m < family.size(); ++m) {
    diag[m].source_margin = SourceMargin(family.map(m), s_tr, s_margin, k_tr);
    if (!diag[m].admitted) continue;
    if (chosen < 0 || *diag[m].source_margin > *diag[chosen].source_margin) {
      chosen = m;
    }
  }
  if (fallback) chosen = MinLossIndex(diag);

  return LearnerOutput{
      .learner = "direct_generalize_nn",
      .chosen_map_index = chosen,
      .classifier = KnnClassifier(s_final, cfg.k_schedule.KOfN(s_final.size()),
                                  family.map(chosen)),
      .epsilon = epsilon,
      .fallback = fallback,
      .diagnostics = std::move(diag),
  };
}

LearnerOutput PresrvContractNN(const LabeledSet& s, const UnlabeledSet& u,
                               const FeatureFamily& family,
                               const LearnerConfig& cfg) {
  cfg.Validate();
  if (s.size() < 10) throw Error("presrv_contract_nn needs at least 10 points");
  if (u.empty()) throw Error("presrv_contract_nn needs unlabeled target data");
  CheckFamily(family, s);
  if (u.dim() != s.dim()) throw Error("target dimension does not match source");
  const double fifths[] = {0.2, 0.2, 0.2, 0.2, 0.2};
  const auto parts = SplitFractions(s, fifths);
  const LabeledSet& s_tr = parts[0];
  const LabeledSet& s_loss = parts[1];
  const LabeledSet& s_margin = parts[2];
  const LabeledSet& s_margin_t = parts[3];
  const int k_tr = cfg.k_schedule.KOfN(s_tr.size());
  const double epsilon = cfg.Epsilon(s.size());

  std::vector<MapDiagnostics> diag(family.size());
  for (int m = 0; m < family.size(); ++m) {
    diag[m].map_index = m;
    diag[m].source_loss = SourceLoss(family.map(m), s_tr, s_loss, k_tr);
  }
  const bool fallback = Admit(cfg, epsilon, diag);
  int chosen = -1;
  for (int m = 0; m < family.size(); ++m) {
    const MarginValue rho_s = SourceMargin(family.map(m), s_tr, s_margin, k_tr);
    const double rho_t = TargetMargin(family.map(m), s_margin_t, u);
    diag[m].source_margin = rho_s;
    diag[m].target_margin = rho_t;
    diag[m].score = rho_s.is_infinite()
                        ? std::numeric_limits<double>::infinity()
                        : rho_s.value() - cfg.lambda * rho_t;
    if (!diag[m].admitted) continue;
    if (chosen < 0 || *diag[m].score > *diag[chosen].score) chosen = m;
  }
  if (fallback) chosen = MinLossIndex(diag);

  return LearnerOutput{
      .learner = "presrv_contract_nn",
      .chosen_map_index = chosen,
      .classifier = KnnClassifier(s_tr, k_tr, family.map(chosen)),
      .epsilon = epsilon,
      .fallback = fallback,
      .diagnostics = std::move(diag),
  };
}

LearnerOutput FeatureValidate(const LabeledSet& s, const LabeledSet& t,
                              const FeatureFamily& family, int k) {
  if (s.empty() || t.empty()) {
    throw Error("feature_validate needs non-empty source and target sets");
  }
  CheckFamily(family, s);
  if (t.dim() != s.dim()) throw Error("target dimension does not match source");
  auto train = std::make_shared<const LabeledSet>(s);
  std::vector<MapDiagnostics> diag(family.size());
  int chosen = 0;
  for (int m = 0; m < family.size(); ++m) {
    diag[m].map_index = m;
    diag[m].admitted = true;
    diag[m].target_loss =
        EmpiricalRisk(KnnClassifier(train, k, family.map(m)), t);
    if (diag[m].target_loss->miscount < diag[chosen].target_loss->miscount) {
      chosen = m;
    }
  }
  return LearnerOutput{
      .learner = "feature_validate",
      .chosen_map_index = chosen,
      .classifier = KnnClassifier(train, k, family.map(chosen)),
      .epsilon = 0.0,
      .fallback = false,
      .diagnostics = std::move(diag),
  };
}

double TargetSampleBudgetRaw(double dd_upper, int n, double epsilon,
                             double delta, double c) {
  if (!(dd_upper >= 0.0) || n < 1 || !(epsilon > 0.0 && epsilon < 1.0) ||
      !(delta > 0.0 && delta < 1.0) || !(c > 0.0)) {
    throw Error("target_sample_budget: argument out of range");
  }
  return c * (dd_upper * std::log(n + dd_upper) + std::log(1.0 / delta)) /
         (epsilon * epsilon);
}

int64_t TargetSampleBudget(double dd_upper, int n, double epsilon,
                           double delta, double c) {
  return std::max<int64_t>(
      1, static_cast<int64_t>(
             std::ceil(TargetSampleBudgetRaw(dd_upper, n, epsilon, delta, c))));
}

}  // namespace sirm
