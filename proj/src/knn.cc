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

#include "sirm/knn.h"

#include <algorithm>
#include <cmath>

#include "sirm/parallel.h"

namespace sirm {

KSchedule KSchedule::Fixed(int k) {
  if (k < 1) throw Error("fixed k must be positive");
  return KSchedule(Rule::kFixed, k, {});
}

KSchedule KSchedule::Table(std::vector<int> table) {
  if (table.empty()) throw Error("k table is empty");
  for (int k : table) {
    if (k < 1) throw Error("k table entries must be positive");
  }
  return KSchedule(Rule::kTable, 0, std::move(table));
}

int KSchedule::KOfN(int n) const {
  if (n < 1) throw Error("k schedule needs n >= 1");
  int k = 1;
  switch (rule_) {
    case Rule::kLogSquared: {
      const double l = std::log(static_cast<double>(n));
      k = static_cast<int>(std::ceil(l * l));
      break;
    }
    case Rule::kFixed:
      k = fixed_k_;
      break;
    case Rule::kTable:
      k = table_[std::min<size_t>(n, table_.size()) - 1];
      break;
  }
  return std::clamp(k, 1, n);
}

std::vector<int> KNearest(const LabeledSet& train, const Point& query, int k,
                          const FeatureMap* map) {
  std::optional<FeatureMap> m;
  if (map) m = *map;
  return KnnClassifier(train, k, std::move(m)).Neighbors(query);
}

KnnClassifier::KnnClassifier(const LabeledSet& train, int k,
                             std::optional<FeatureMap> map)
    : KnnClassifier(std::make_shared<const LabeledSet>(train), k,
                    std::move(map)) {}

KnnClassifier::KnnClassifier(std::shared_ptr<const LabeledSet> train, int k,
                             std::optional<FeatureMap> map)
    : train_(std::move(train)), k_(k), map_(std::move(map)) {
  if (!train_ || train_->empty()) throw Error("k-NN training set is empty");
  if (k_ < 1 || k_ > train_->size()) {
    throw Error("k = " + std::to_string(k_) + " outside [1, " +
                std::to_string(train_->size()) + "]");
  }
  if (map_ && map_->input_dim() != train_->dim()) {
    throw Error("feature map input dimension does not match training data");
  }
  feature_dim_ = map_ ? map_->output_dim() : train_->dim();
  features_.resize(static_cast<size_t>(train_->size()) * feature_dim_);
  for (int i = 0; i < train_->size(); ++i) {
    std::span<double> out(features_.data() + static_cast<size_t>(i) * feature_dim_,
                          feature_dim_);
    if (map_) {
      map_->ApplyTo(train_->point(i).coords(), out);
    } else {
      const auto c = train_->point(i).coords();
      std::copy(c.begin(), c.end(), out.begin());
    }
  }
}

void KnnClassifier::MapQuery(const Point& query,
                             std::vector<double>& out) const {
  if (query.dim() != train_->dim()) {
    throw Error("query has dimension " + std::to_string(query.dim()) +
                ", training data has " + std::to_string(train_->dim()));
  }
  out.resize(feature_dim_);
  if (map_) {
    map_->ApplyTo(query.coords(), out);
  } else {
    std::copy(query.coords().begin(), query.coords().end(), out.begin());
  }
}

void KnnClassifier::Rank(const std::vector<double>& q, std::vector<int>& order,
                         std::vector<double>& dist) const {
  const int n = train_->size();
  dist.resize(n);
  order.resize(n);
  for (int i = 0; i < n; ++i) {
    dist[i] = SquaredDistance(
        q, std::span<const double>(
               features_.data() + static_cast<size_t>(i) * feature_dim_,
               feature_dim_));
    order[i] = i;
  }
  auto closer = [&dist](int a, int b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  };
  if (k_ < n) {
    std::nth_element(order.begin(), order.begin() + (k_ - 1), order.end(),
                     closer);
  }
  std::sort(order.begin(), order.begin() + k_, closer);
  order.resize(k_);
}

Label KnnClassifier::Vote(const std::vector<int>& order) const {
  std::vector<int> votes(train_->label_count(), 0);
  for (int i : order) ++votes[train_->label(i)];
  // max_element returns the first maximum, i.e. the smallest label id.
  return static_cast<Label>(std::max_element(votes.begin(), votes.end()) -
                            votes.begin());
}

std::vector<int> KnnClassifier::Neighbors(const Point& query) const {
  std::vector<double> q, dist;
  std::vector<int> order;
  MapQuery(query, q);
  Rank(q, order, dist);
  return order;
}

Label KnnClassifier::Predict(const Point& query) const {
  return Vote(Neighbors(query));
}

std::vector<Label> KnnClassifier::PredictBatch(const UnlabeledSet& queries,
                                               int threads) const {
  if (!queries.empty() && queries.dim() != train_->dim()) {
    throw Error("query set has dimension " + std::to_string(queries.dim()) +
                ", training data has " + std::to_string(train_->dim()));
  }
  return PredictBatch(queries.points(), threads);
}

std::vector<Label> KnnClassifier::PredictBatch(
    const std::vector<Point>& queries, int threads) const {
  const int n = static_cast<int>(queries.size());
  std::vector<Label> out(n);
  const int chunks = std::clamp(threads, 1, std::max(1, n));
  ParallelFor(chunks, chunks, [&](int c) {
    std::vector<double> q, dist;
    std::vector<int> order;
    const int begin = static_cast<int>(static_cast<long>(n) * c / chunks);
    const int end = static_cast<int>(static_cast<long>(n) * (c + 1) / chunks);
    for (int i = begin; i < end; ++i) {
      MapQuery(queries[i], q);
      Rank(q, order, dist);
      out[i] = Vote(order);
    }
  });
  return out;
}

}  // namespace sirm
