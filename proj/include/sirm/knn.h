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

// Deterministic k-nearest-neighbor classification with a fixed tie-breaking
// order, optionally composed with a feature map.
//
// Neighbors are ranked by (squared feature-space distance, insertion index):
// among equidistant training points the one inserted earlier wins. Votes
// are a plurality over the k neighbors, with label ties going to the
// smallest label id. Distances are compared squared, so two neighbors tie
// only when their squared distances are bitwise equal.

#ifndef SIRM_KNN_H_
#define SIRM_KNN_H_

#include <memory>
#include <optional>
#include <vector>

#include "sirm/core.h"
#include "sirm/feature_map.h"

namespace sirm {

class KSchedule {
 public:
  enum class Rule { kLogSquared, kFixed, kTable };

  // min(n, max(1, ceil((ln n)^2))).
  static KSchedule LogSquared() { return KSchedule(Rule::kLogSquared, 0, {}); }
  static KSchedule Fixed(int k);
  // table[n - 1] is the k for n; the last entry is reused past the end.
  static KSchedule Table(std::vector<int> table);

  Rule rule() const { return rule_; }
  int fixed_k() const { return fixed_k_; }

  // Scheduled k for a training set of size n >= 1, clamped to [1, n].
  int KOfN(int n) const;

 private:
  KSchedule(Rule rule, int fixed_k, std::vector<int> table)
      : rule_(rule), fixed_k_(fixed_k), table_(std::move(table)) {}

  Rule rule_;
  int fixed_k_;
  std::vector<int> table_;
};

// Indices of the k nearest training points to `query`, nearest first, under
// the metric induced by `map` (plain Euclidean when absent). Throws on an
// empty training set, k outside [1, |train|], or a dimension mismatch.
std::vector<int> KNearest(const LabeledSet& train, const Point& query, int k,
                          const FeatureMap* map = nullptr);

// An immutable (training set, k, feature map) binding. Training points are
// mapped once at construction.
class KnnClassifier {
 public:
  KnnClassifier(std::shared_ptr<const LabeledSet> train, int k,
                std::optional<FeatureMap> map = std::nullopt);
  KnnClassifier(const LabeledSet& train, int k,
                std::optional<FeatureMap> map = std::nullopt);

  const LabeledSet& train() const { return *train_; }
  int k() const { return k_; }
  const std::optional<FeatureMap>& map() const { return map_; }

  std::vector<int> Neighbors(const Point& query) const;
  Label Predict(const Point& query) const;
  // Elementwise equal to Predict; fans out over `threads` workers.
  std::vector<Label> PredictBatch(const UnlabeledSet& queries,
                                  int threads = 1) const;
  std::vector<Label> PredictBatch(const std::vector<Point>& queries,
                                  int threads = 1) const;

 private:
  void MapQuery(const Point& query, std::vector<double>& out) const;
  void Rank(const std::vector<double>& mapped_query, std::vector<int>& order,
            std::vector<double>& dist) const;
  Label Vote(const std::vector<int>& order) const;

  std::shared_ptr<const LabeledSet> train_;
  int k_;
  std::optional<FeatureMap> map_;
  int feature_dim_;
  std::vector<double> features_;  // row-major |train| x feature_dim_
};

}  // namespace sirm

#endif  // SIRM_KNN_H_
