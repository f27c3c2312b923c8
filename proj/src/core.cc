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

#include "sirm/core.h"

#include <cmath>
#include <numeric>

namespace sirm {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error("point needs at least one coordinate");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw Error("point coordinate is not finite");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double EuclideanDistance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw Error("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()));
  }
  return std::sqrt(SquaredDistance(a.coords(), b.coords()));
}

LabeledSet::LabeledSet(int dim, int label_count)
    : dim_(dim), label_count_(label_count) {
  if (dim < 1) throw Error("dataset dimension must be at least 1");
  if (label_count < 1) throw Error("label count must be at least 1");
}

void LabeledSet::Add(Point x, Label y) {
  if (x.dim() != dim_) {
    throw Error("point has dimension " + std::to_string(x.dim()) +
                ", dataset has " + std::to_string(dim_));
  }
  if (y < 0 || y >= label_count_) {
    throw Error("label " + std::to_string(y) + " outside [0, " +
                std::to_string(label_count_) + ")");
  }
  points_.push_back(std::move(x));
  labels_.push_back(y);
}

LabeledSet LabeledSet::Slice(int begin, int end) const {
  LabeledSet out(dim_, label_count_);
  for (int i = begin; i < end; ++i) out.Add(points_[i], labels_[i]);
  return out;
}

UnlabeledSet::UnlabeledSet(int dim) : dim_(dim) {
  if (dim < 1) throw Error("dataset dimension must be at least 1");
}

UnlabeledSet::UnlabeledSet(int dim, std::vector<Point> points)
    : UnlabeledSet(dim) {
  for (auto& p : points) Add(std::move(p));
}

void UnlabeledSet::Add(Point x) {
  if (x.dim() != dim_) {
    throw Error("point has dimension " + std::to_string(x.dim()) +
                ", dataset has " + std::to_string(dim_));
  }
  points_.push_back(std::move(x));
}

UnlabeledSet UnlabeledSet::FromLabeled(const LabeledSet& s) {
  return UnlabeledSet(s.dim(), s.points());
}

std::vector<LabeledSet> SplitFractions(const LabeledSet& s,
                                       std::span<const double> fractions) {
  if (fractions.empty()) throw Error("split fractions are empty");
  if (s.empty()) throw Error("cannot split an empty dataset");
  for (double f : fractions) {
    if (!(f > 0.0)) throw Error("split fractions must be positive");
  }
  const double total = std::accumulate(fractions.begin(), fractions.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error("split fractions sum to " + std::to_string(total) +
                ", expected 1");
  }
  const int n = s.size();
  std::vector<LabeledSet> parts;
  int begin = 0;
  for (size_t i = 0; i < fractions.size(); ++i) {
    int end = n;
    if (i + 1 < fractions.size()) {
      end = begin + static_cast<int>(std::floor(fractions[i] * n + 1e-9));
      end = std::min(end, n);
    }
    parts.push_back(s.Slice(begin, end));
    begin = end;
  }
  return parts;
}

}  // namespace sirm
