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

#include "sirm/shattering.h"

#include <algorithm>
#include <string>

namespace sirm {

const char* VerdictName(ShatterResult::Verdict v) {
  switch (v) {
    case ShatterResult::Verdict::kFound:
      return "found";
    case ShatterResult::Verdict::kNoneFound:
      return "none found";
    case ShatterResult::Verdict::kInconclusive:
      return "inconclusive";
  }
  return "";
}

namespace {

class Search {
 public:
  Search(std::vector<std::vector<uint8_t>> bits, int target, int64_t budget)
      : bits_(std::move(bits)),
        maps_(static_cast<int>(bits_.size())),
        quads_(static_cast<int>(bits_.front().size())),
        target_(target),
        budget_(budget),
        patterns_(maps_, 0) {}

  ShatterResult Run() {
    ShatterResult r;
    // A class with fewer members than 2^t dichotomies cannot shatter t points.
    if (maps_ < (int64_t{1} << target_)) {
      r.verdict = ShatterResult::Verdict::kNoneFound;
      return r;
    }
    const bool found = Dfs(0);
    r.candidate_sets = evaluated_;
    if (found) {
      r.verdict = ShatterResult::Verdict::kFound;
      r.witness = chosen_;
      std::vector<int> first(size_t{1} << target_, -1);
      for (int m = 0; m < maps_; ++m) {
        if (first[patterns_[m]] < 0) first[patterns_[m]] = m;
      }
      for (uint32_t p = 0; p < first.size(); ++p) {
        r.dichotomies.push_back({p, first[p]});
      }
    } else {
      r.verdict = exhausted_ ? ShatterResult::Verdict::kInconclusive
                             : ShatterResult::Verdict::kNoneFound;
    }
    return r;
  }

 private:
  int DistinctPatterns() const {
    std::vector<uint32_t> p(patterns_);
    std::sort(p.begin(), p.end());
    return static_cast<int>(std::unique(p.begin(), p.end()) - p.begin());
  }

  bool Dfs(int start) {
    const int depth = static_cast<int>(chosen_.size());
    if (depth == target_) return true;
    for (int q = start; q <= quads_ - (target_ - depth); ++q) {
      if (evaluated_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++evaluated_;
      for (int m = 0; m < maps_; ++m) {
        patterns_[m] |= static_cast<uint32_t>(bits_[m][q]) << depth;
      }
      chosen_.push_back(q);
      if (DistinctPatterns() == (1 << (depth + 1)) && Dfs(q + 1)) return true;
      chosen_.pop_back();
      for (int m = 0; m < maps_; ++m) {
        patterns_[m] &= ~(uint32_t{1} << depth);
      }
      if (exhausted_) return false;
    }
    return false;
  }

  std::vector<std::vector<uint8_t>> bits_;
  int maps_;
  int quads_;
  int target_;
  int64_t budget_;
  int64_t evaluated_ = 0;
  bool exhausted_ = false;
  std::vector<uint32_t> patterns_;
  std::vector<int> chosen_;
};

}  // namespace

ShatterResult ShatteringSearch(const FeatureFamily& family,
                               const std::vector<ComparerQuery>& quadruples,
                               int target_size, int64_t max_candidate_sets) {
  const int q = static_cast<int>(quadruples.size());
  if (target_size < 1 || target_size > q || target_size > 20) {
    throw Error("shattering target size " + std::to_string(target_size) +
                " outside [1, min(" + std::to_string(q) + ", 20)]");
  }
  std::vector<std::vector<uint8_t>> bits(family.size(),
                                         std::vector<uint8_t>(q));
  for (int m = 0; m < family.size(); ++m) {
    for (int j = 0; j < q; ++j) {
      bits[m][j] = Comparer(family.map(m), quadruples[j]) ? 1 : 0;
    }
  }
  return Search(std::move(bits), target_size, max_candidate_sets).Run();
}

std::vector<ComparerQuery> RandomQuadruples(int dim, int count,
                                            SeedSpec seed) {
  if (dim < 1 || count < 0) throw Error("random quadruples: bad arguments");
  Rng rng(seed);
  auto point = [&] {
    std::vector<double> v(dim);
    for (double& x : v) x = rng.Uniform();
    return Point(std::move(v));
  };
  std::vector<ComparerQuery> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Point a = point(), b = point(), c = point(), d = point();
    out.push_back(ComparerQuery{std::move(a), std::move(b), std::move(c),
                                std::move(d)});
  }
  return out;
}

double FamilyDistanceDimUpper(const FeatureFamily& family) {
  bool coordinate = true;
  for (const auto& m : family.maps()) {
    if (m.kind() == FeatureMap::Kind::kLinear) coordinate = false;
  }
  return DistanceDimUpper(coordinate ? FamilyKind::kCor : FamilyKind::kProj,
                          family.input_dim(), family.output_dim());
}

}  // namespace sirm
