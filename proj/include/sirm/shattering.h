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

// Empirical shattering search for the comparer class of a finite family.

#ifndef SIRM_SHATTERING_H_
#define SIRM_SHATTERING_H_

#include <cstdint>
#include <vector>

#include "sirm/feature_map.h"
#include "sirm/random.h"

namespace sirm {

struct ShatterResult {
  enum class Verdict { kFound, kNoneFound, kInconclusive };

  struct Dichotomy {
    uint32_t pattern;  // bit j = comparer bit on witness[j]
    int map_index;     // first family member realizing the pattern
  };

  Verdict verdict = Verdict::kNoneFound;
  std::vector<int> witness;            // quadruple indices, ascending
  std::vector<Dichotomy> dichotomies;  // all 2^|witness| patterns, ascending
  int64_t candidate_sets = 0;          // partial and full subsets examined
};

const char* VerdictName(ShatterResult::Verdict v);

// Searches subsets of `quadruples` of size `target_size` for one shattered by
// {Comparer(phi, .) : phi in family}. Subsets are enumerated in
// lexicographic order; a partial subset is abandoned as soon as it is not
// itself shattered. Exceeding `max_candidate_sets` yields kInconclusive.
// target_size must be in [1, min(|quadruples|, 20)].
ShatterResult ShatteringSearch(const FeatureFamily& family,
                               const std::vector<ComparerQuery>& quadruples,
                               int target_size, int64_t max_candidate_sets);

// `count` quadruples with coordinates i.i.d. uniform on [0, 1].
std::vector<ComparerQuery> RandomQuadruples(int dim, int count, SeedSpec seed);

// Upper bound on the distance dimension of a family: the
// coordinate-projection bound when every map is a coordinate subset (or the
// identity), the linear-map bound otherwise.
double FamilyDistanceDimUpper(const FeatureFamily& family);

}  // namespace sirm

#endif  // SIRM_SHATTERING_H_
