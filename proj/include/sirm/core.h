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

// Foundational types shared by every module: points, labeled and unlabeled
// datasets, and the Euclidean metric.

#ifndef SIRM_CORE_H_
#define SIRM_CORE_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sirm {

// Raised for violated preconditions (dimension mismatch, empty inputs, bad
// files). Command-line tools map it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Label = int32_t;

// A finite coordinate vector. Coordinates are checked to be finite on
// construction.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

double SquaredDistance(std::span<const double> a, std::span<const double> b);

// l2 distance; throws Error on dimension mismatch.
double EuclideanDistance(const Point& a, const Point& b);

// An ordered sequence of (point, label) pairs. The insertion order is the
// tie-breaking order used by nearest-neighbor search and is never permuted.
class LabeledSet {
 public:
  LabeledSet(int dim, int label_count);

  void Add(Point x, Label y);

  int dim() const { return dim_; }
  int label_count() const { return label_count_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }

  const Point& point(int i) const { return points_[i]; }
  Label label(int i) const { return labels_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Label>& labels() const { return labels_; }

  // Items [begin, end) in order.
  LabeledSet Slice(int begin, int end) const;

 private:
  int dim_;
  int label_count_;
  std::vector<Point> points_;
  std::vector<Label> labels_;
};

class UnlabeledSet {
 public:
  explicit UnlabeledSet(int dim);
  UnlabeledSet(int dim, std::vector<Point> points);

  void Add(Point x);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }
  const Point& point(int i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  static UnlabeledSet FromLabeled(const LabeledSet& s);

 private:
  int dim_;
  std::vector<Point> points_;
};

// Contiguous split in insertion order. Part i has floor(fraction_i * n)
// items, except the final part, which takes the remainder. Throws if the
// fractions are empty, non-positive, or do not sum to 1 within 1e-9.
std::vector<LabeledSet> SplitFractions(const LabeledSet& s,
                                       std::span<const double> fractions);

}  // namespace sirm

#endif  // SIRM_CORE_H_
