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

#include "sirm/estimators.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sirm/csv.h"

namespace sirm {

MarginValue MarginValue::Finite(double v) {
  if (!(v >= 0.0) || std::isinf(v)) {
    throw Error("finite margin must be a non-negative real");
  }
  return MarginValue(v, false);
}

double MarginValue::value() const {
  if (infinite_) throw Error("margin is infinite");
  return value_;
}

double MarginValue::AsDouble() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string MarginValue::ToString() const {
  return infinite_ ? "inf" : FormatReal(value_);
}

std::partial_ordering operator<=>(const MarginValue& a, const MarginValue& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  return a.value_ <=> b.value_;
}

namespace {

// Mapped coordinates of a point set, row-major.
std::vector<double> MapAll(const FeatureMap& map, const std::vector<Point>& pts) {
  const int k = map.output_dim();
  std::vector<double> out(pts.size() * k);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].dim() != map.input_dim()) {
      throw Error("point dimension does not match the feature map");
    }
    map.ApplyTo(pts[i].coords(), std::span<double>(out.data() + i * k, k));
  }
  return out;
}

double RowDistance2(const std::vector<double>& a, size_t i,
                    const std::vector<double>& b, size_t j, int k) {
  return SquaredDistance(std::span<const double>(a.data() + i * k, k),
                         std::span<const double>(b.data() + j * k, k));
}

}  // namespace

LossEstimate SourceLoss(const FeatureMap& map, const LabeledSet& s_tr,
                        const LabeledSet& s_loss, int k) {
  if (s_loss.empty()) throw Error("source_loss: evaluation set is empty");
  const KnnClassifier clf(s_tr, k, map);
  return EmpiricalRisk(clf, s_loss);
}

MarginValue SourceMargin(const FeatureMap& map, const LabeledSet& s_tr,
                         const LabeledSet& s_source, int k) {
  if (s_source.empty()) throw Error("source_margin: source set is empty");
  const int half = s_source.size() / 2;
  if (half == 0) throw Error("source_margin: needs at least two points");
  const KnnClassifier clf(s_tr, k, map);
  MarginValue best = MarginValue::Infinite();
  for (int i = 0; i < half; ++i) {
    const Point& a = s_source.point(i);
    const Point& b = s_source.point(half + i);
    if (clf.Predict(a) == clf.Predict(b)) continue;
    const MarginValue d = MarginValue::Finite(MappedDistance(map, a, b));
    if (d < best) best = d;
  }
  return best;
}

int TargetMarginBlockSize(int source_size, int target_size) {
  int root = static_cast<int>(std::sqrt(static_cast<double>(source_size)));
  while (static_cast<long>(root + 1) * (root + 1) <= source_size) ++root;
  while (static_cast<long>(root) * root > source_size) --root;
  return std::min(target_size, root);
}

double TargetMargin(const FeatureMap& map, const LabeledSet& s_margin_t,
                    const UnlabeledSet& u) {
  const int l = TargetMarginBlockSize(s_margin_t.size(), u.size());
  if (l < 1) throw Error("target_margin: block size l is 0");
  const int k = map.output_dim();
  const auto src = MapAll(map, s_margin_t.points());
  const auto tgt = MapAll(map, u.points());
  double worst = 0.0;
  for (int i = 0; i < l; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = i * l; j < (i + 1) * l; ++j) {
      nearest = std::min(nearest, RowDistance2(tgt, i, src, j, k));
    }
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

LossEstimate EmpiricalRisk(const KnnClassifier& classifier,
                           const LabeledSet& eval, int threads) {
  if (eval.empty()) throw Error("risk evaluation set is empty");
  const auto predicted = classifier.PredictBatch(eval.points(), threads);
  LossEstimate r;
  r.count = eval.size();
  for (int i = 0; i < eval.size(); ++i) {
    if (predicted[i] != eval.label(i)) ++r.miscount;
  }
  r.value = static_cast<double>(r.miscount) / r.count;
  return r;
}

double BetaEstimate(const FeatureMap& map, const UnlabeledSet& source_points,
                    const UnlabeledSet& target_points) {
  if (source_points.empty() || target_points.empty()) {
    throw Error("beta_estimate: point sets must be non-empty");
  }
  const int k = map.output_dim();
  const auto src = MapAll(map, source_points.points());
  const auto tgt = MapAll(map, target_points.points());
  double worst = 0.0;
  for (int i = 0; i < target_points.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < source_points.size() && nearest > worst; ++j) {
      nearest = std::min(nearest, RowDistance2(tgt, i, src, j, k));
    }
    worst = std::max(worst, nearest);
  }
  return std::sqrt(worst);
}

}  // namespace sirm
