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

// Feature maps (identity, coordinate subsets, bounded linear maps), finite
// families of them, and the induced distance comparer.

#ifndef SIRM_FEATURE_MAP_H_
#define SIRM_FEATURE_MAP_H_

#include <span>
#include <string>
#include <vector>

#include "sirm/core.h"
#include "sirm/random.h"

namespace sirm {

class FeatureMap {
 public:
  enum class Kind { kIdentity, kCoordinateSubset, kLinear };

  static FeatureMap Identity(int dim);
  // Selects coordinates J (0-indexed, non-empty, strictly increasing).
  static FeatureMap CoordinateSubset(int dim, std::vector<int> coordinates);
  // x -> x * A for a row-major dim x output_dim matrix A with every entry in
  // [-1, 1].
  static FeatureMap Linear(int dim, int output_dim, std::vector<double> matrix);

  Kind kind() const { return kind_; }
  int input_dim() const { return input_dim_; }
  int output_dim() const { return output_dim_; }
  const std::vector<int>& coordinates() const { return coordinates_; }
  const std::vector<double>& matrix() const { return matrix_; }
  double entry(int row, int col) const { return matrix_[row * output_dim_ + col]; }

  Point Apply(const Point& x) const;
  // Unchecked variant used on hot paths; out.size() == output_dim().
  void ApplyTo(std::span<const double> x, std::span<double> out) const;

  // Upper bound on the Lipschitz constant (1 for identity and coordinate
  // maps, Frobenius norm for linear maps).
  double LipschitzBound() const;

  std::string Describe() const;

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  FeatureMap(Kind kind, int input_dim, int output_dim)
      : kind_(kind), input_dim_(input_dim), output_dim_(output_dim) {}

  Kind kind_;
  int input_dim_;
  int output_dim_;
  std::vector<int> coordinates_;
  std::vector<double> matrix_;
};

// Squared distance between the images of a and b.
double MappedSquaredDistance(const FeatureMap& map, const Point& a,
                             const Point& b);
double MappedDistance(const FeatureMap& map, const Point& a, const Point& b);

class FeatureFamily {
 public:
  enum class Provenance { kExplicit, kCorEnumeration, kProjRandom, kProjGrid };

  FeatureFamily(std::vector<FeatureMap> maps, Provenance provenance);

  // All C(dim, output_dim) coordinate projections in lexicographic order of J.
  static FeatureFamily FullCor(int dim, int output_dim);
  // `count` matrices with i.i.d. uniform entries in [-1, 1].
  static FeatureFamily RandomProj(int dim, int output_dim, int count,
                                  SeedSpec seed);
  // Every matrix whose entries lie on the `levels`-point uniform grid over
  // [-1, 1], the all-zero matrix excluded.
  static FeatureFamily GridProj(int dim, int output_dim, int levels);

  int size() const { return static_cast<int>(maps_.size()); }
  const FeatureMap& map(int i) const { return maps_[i]; }
  const std::vector<FeatureMap>& maps() const { return maps_; }
  int input_dim() const { return maps_.front().input_dim(); }
  int output_dim() const { return maps_.front().output_dim(); }
  Provenance provenance() const { return provenance_; }

 private:
  std::vector<FeatureMap> maps_;
  Provenance provenance_;
};

struct ComparerQuery {
  Point x1, x2, x3, x4;
};

// 1 iff d(phi(x1), phi(x2)) >= d(phi(x3), phi(x4)), decided on squared
// distances.
bool Comparer(const FeatureMap& map, const ComparerQuery& q);

// <A A^T, (x1-x2)(x1-x2)^T - (x3-x4)(x3-x4)^T> for a linear map; its sign
// (with 0 counted as positive) reproduces Comparer. Throws for non-linear
// maps.
double ComparerInnerProduct(const FeatureMap& map, const ComparerQuery& q);
bool ComparerLinearForm(const FeatureMap& map, const ComparerQuery& q);

enum class FamilyKind { kCor, kProj };

// K log2 D for coordinate projections, D^2 for bounded linear maps.
double DistanceDimUpper(FamilyKind kind, int dim, int output_dim);

}  // namespace sirm

#endif  // SIRM_FEATURE_MAP_H_
