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

// Empirical subroutines used by the learners: composed k-NN loss, paired
// source margin, blocked target margin, risk evaluation, and a plug-in
// estimate of how far target points sit from the source sample.

#ifndef SIRM_ESTIMATORS_H_
#define SIRM_ESTIMATORS_H_

#include <compare>
#include <string>

#include "sirm/core.h"
#include "sirm/feature_map.h"
#include "sirm/knn.h"

namespace sirm {

// A non-negative distance or the +infinity sentinel. The sentinel compares
// greater than every finite value and equal to itself.
class MarginValue {
 public:
  static MarginValue Finite(double v);
  static MarginValue Infinite() { return MarginValue(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Throws when infinite.
  double value() const;
  // +inf as an IEEE double; for arithmetic on scores.
  double AsDouble() const;
  std::string ToString() const;

  friend std::partial_ordering operator<=>(const MarginValue& a,
                                           const MarginValue& b);
  friend bool operator==(const MarginValue& a, const MarginValue& b) {
    return (a <=> b) == 0;
  }

 private:
  MarginValue(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

struct LossEstimate {
  double value = 0.0;  // miscount / count
  int miscount = 0;
  int count = 0;
};

// Fraction of s_loss misclassified by the k-NN classifier over s_tr composed
// with `map`. Throws if s_loss is empty.
LossEstimate SourceLoss(const FeatureMap& map, const LabeledSet& s_tr,
                        const LabeledSet& s_loss, int k);

// Splits s_source in insertion order into halves a and b (dropping the last
// item when |s_source| is odd) and returns the smallest mapped distance
// d(x_i^a, x_i^b) over index-matched pairs that the classifier over s_tr
// labels differently, or +infinity when every pair agrees.
MarginValue SourceMargin(const FeatureMap& map, const LabeledSet& s_tr,
                         const LabeledSet& s_source, int k);

// l = min(|u|, floor(sqrt(|s_margin_t|))). The first l^2 source points are
// cut into l consecutive blocks of l; returns max_i min_{x in block i}
// d(u_i, x). Labels are ignored. Throws if l == 0.
double TargetMargin(const FeatureMap& map, const LabeledSet& s_margin_t,
                    const UnlabeledSet& u);
int TargetMarginBlockSize(int source_size, int target_size);

LossEstimate EmpiricalRisk(const KnnClassifier& classifier,
                           const LabeledSet& eval, int threads = 1);

// max over target points of the min mapped distance to the source points.
double BetaEstimate(const FeatureMap& map, const UnlabeledSet& source_points,
                    const UnlabeledSet& target_points);

}  // namespace sirm

#endif  // SIRM_ESTIMATORS_H_
