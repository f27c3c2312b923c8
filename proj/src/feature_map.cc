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

#include "sirm/feature_map.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sirm/csv.h"

namespace sirm {

FeatureMap FeatureMap::Identity(int dim) {
  if (dim < 1) throw Error("identity map needs dim >= 1");
  return FeatureMap(Kind::kIdentity, dim, dim);
}

FeatureMap FeatureMap::CoordinateSubset(int dim, std::vector<int> coordinates) {
  if (coordinates.empty()) throw Error("coordinate subset is empty");
  for (size_t i = 0; i < coordinates.size(); ++i) {
    if (coordinates[i] < 0 || coordinates[i] >= dim) {
      throw Error("coordinate " + std::to_string(coordinates[i]) +
                  " outside [0, " + std::to_string(dim) + ")");
    }
    if (i > 0 && coordinates[i] <= coordinates[i - 1]) {
      throw Error("coordinate subset must be strictly increasing");
    }
  }
  FeatureMap m(Kind::kCoordinateSubset, dim,
               static_cast<int>(coordinates.size()));
  m.coordinates_ = std::move(coordinates);
  return m;
}

FeatureMap FeatureMap::Linear(int dim, int output_dim,
                              std::vector<double> matrix) {
  if (dim < 1 || output_dim < 1) throw Error("linear map needs positive dims");
  if (static_cast<int>(matrix.size()) != dim * output_dim) {
    throw Error("linear map matrix has " + std::to_string(matrix.size()) +
                " entries, expected " + std::to_string(dim * output_dim));
  }
  for (double a : matrix) {
    if (!(a >= -1.0 && a <= 1.0)) {
      throw Error("linear map entry " + FormatReal(a) + " outside [-1, 1]");
    }
  }
  FeatureMap m(Kind::kLinear, dim, output_dim);
  m.matrix_ = std::move(matrix);
  return m;
}

void FeatureMap::ApplyTo(std::span<const double> x,
                         std::span<double> out) const {
  switch (kind_) {
    case Kind::kIdentity:
      std::copy(x.begin(), x.end(), out.begin());
      return;
    case Kind::kCoordinateSubset:
      for (int j = 0; j < output_dim_; ++j) out[j] = x[coordinates_[j]];
      return;
    case Kind::kLinear:
      for (int j = 0; j < output_dim_; ++j) {
        double s = 0.0;
        for (int i = 0; i < input_dim_; ++i) s += x[i] * entry(i, j);
        out[j] = s;
      }
      return;
  }
}

Point FeatureMap::Apply(const Point& x) const {
  if (x.dim() != input_dim_) {
    throw Error("map expects dimension " + std::to_string(input_dim_) +
                ", got " + std::to_string(x.dim()));
  }
  std::vector<double> out(output_dim_);
  ApplyTo(x.coords(), out);
  return Point(std::move(out));
}

double FeatureMap::LipschitzBound() const {
  if (kind_ != Kind::kLinear) return 1.0;
  double s = 0.0;
  for (double a : matrix_) s += a * a;
  return std::sqrt(s);
}

std::string FeatureMap::Describe() const {
  switch (kind_) {
    case Kind::kIdentity:
      return "identity";
    case Kind::kCoordinateSubset: {
      std::string s = "cor{";
      for (size_t i = 0; i < coordinates_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(coordinates_[i]);
      }
      return s + "}";
    }
    case Kind::kLinear:
      return "linear" + std::to_string(input_dim_) + "x" +
             std::to_string(output_dim_);
  }
  return "";
}

double MappedSquaredDistance(const FeatureMap& map, const Point& a,
                             const Point& b) {
  const Point fa = map.Apply(a);
  const Point fb = map.Apply(b);
  return SquaredDistance(fa.coords(), fb.coords());
}

double MappedDistance(const FeatureMap& map, const Point& a, const Point& b) {
  return std::sqrt(MappedSquaredDistance(map, a, b));
}

FeatureFamily::FeatureFamily(std::vector<FeatureMap> maps,
                             Provenance provenance)
    : maps_(std::move(maps)), provenance_(provenance) {
  if (maps_.empty()) throw Error("feature family is empty");
  for (size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].input_dim() != maps_[0].input_dim() ||
        maps_[i].output_dim() != maps_[0].output_dim()) {
      throw Error("feature family maps disagree on dimensions");
    }
    for (size_t j = 0; j < i; ++j) {
      if (maps_[i] == maps_[j]) {
        throw Error("feature family has duplicate maps at indices " +
                    std::to_string(j) + " and " + std::to_string(i));
      }
    }
  }
}

FeatureFamily FeatureFamily::FullCor(int dim, int output_dim) {
  if (output_dim < 1 || output_dim > dim) {
    throw Error("Cor family needs 1 <= K <= D");
  }
  std::vector<FeatureMap> maps;
  std::vector<int> j(output_dim);
  std::iota(j.begin(), j.end(), 0);
  while (true) {
    maps.push_back(FeatureMap::CoordinateSubset(dim, j));
    int i = output_dim - 1;
    while (i >= 0 && j[i] == dim - output_dim + i) --i;
    if (i < 0) break;
    ++j[i];
    for (int t = i + 1; t < output_dim; ++t) j[t] = j[t - 1] + 1;
  }
  return FeatureFamily(std::move(maps), Provenance::kCorEnumeration);
}

FeatureFamily FeatureFamily::RandomProj(int dim, int output_dim, int count,
                                        SeedSpec seed) {
  if (count < 1) throw Error("Proj sample needs at least one map");
  Rng rng(seed);
  std::vector<FeatureMap> maps;
  for (int c = 0; c < count; ++c) {
    std::vector<double> a(dim * output_dim);
    for (double& v : a) v = rng.Uniform(-1.0, 1.0);
    maps.push_back(FeatureMap::Linear(dim, output_dim, std::move(a)));
  }
  return FeatureFamily(std::move(maps), Provenance::kProjRandom);
}

FeatureFamily FeatureFamily::GridProj(int dim, int output_dim, int levels) {
  if (levels < 2) throw Error("Proj grid needs at least 2 levels");
  const int entries = dim * output_dim;
  const double total = std::pow(static_cast<double>(levels), entries);
  if (total > 1e5) throw Error("Proj grid would exceed 100000 maps");
  std::vector<FeatureMap> maps;
  for (long code = 0; code < static_cast<long>(total); ++code) {
    long c = code;
    std::vector<double> a(entries);
    bool all_zero = true;
    for (int e = 0; e < entries; ++e) {
      const int d = static_cast<int>(c % levels);
      c /= levels;
      a[e] = -1.0 + 2.0 * d / (levels - 1);
      if (a[e] != 0.0) all_zero = false;
    }
    if (all_zero) continue;
    maps.push_back(FeatureMap::Linear(dim, output_dim, std::move(a)));
  }
  return FeatureFamily(std::move(maps), Provenance::kProjGrid);
}

namespace {

void CheckQuery(const FeatureMap& map, const ComparerQuery& q) {
  const int d = map.input_dim();
  if (q.x1.dim() != d || q.x2.dim() != d || q.x3.dim() != d ||
      q.x4.dim() != d) {
    throw Error("comparer query dimension does not match the map");
  }
}

}  // namespace

bool Comparer(const FeatureMap& map, const ComparerQuery& q) {
  CheckQuery(map, q);
  return MappedSquaredDistance(map, q.x1, q.x2) >=
         MappedSquaredDistance(map, q.x3, q.x4);
}

double ComparerInnerProduct(const FeatureMap& map, const ComparerQuery& q) {
  if (map.kind() != FeatureMap::Kind::kLinear) {
    throw Error("linear form requires a linear map");
  }
  CheckQuery(map, q);
  const int d = map.input_dim();
  const int k = map.output_dim();
  std::vector<double> u(d), v(d);
  for (int i = 0; i < d; ++i) {
    u[i] = q.x1[i] - q.x2[i];
    v[i] = q.x3[i] - q.x4[i];
  }
  double inner = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      double gram = 0.0;  // (A A^T)_{ij}
      for (int c = 0; c < k; ++c) gram += map.entry(i, c) * map.entry(j, c);
      inner += gram * (u[i] * u[j] - v[i] * v[j]);
    }
  }
  return inner;
}

bool ComparerLinearForm(const FeatureMap& map, const ComparerQuery& q) {
  return ComparerInnerProduct(map, q) >= 0.0;
}

double DistanceDimUpper(FamilyKind kind, int dim, int output_dim) {
  if (output_dim < 1 || dim < output_dim) {
    throw Error("distance dimension bound needs D >= K >= 1");
  }
  switch (kind) {
    case FamilyKind::kCor:
      return output_dim * std::log2(static_cast<double>(dim));
    case FamilyKind::kProj:
      return static_cast<double>(dim) * dim;
  }
  throw Error("unsupported family kind");
}

}  // namespace sirm
