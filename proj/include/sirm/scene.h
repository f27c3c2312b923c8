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

// Synthetic distributions built from labeled balls, with a closed-form Bayes
// classifier, plus the (source, target, family) triple they are used in.

#ifndef SIRM_SCENE_H_
#define SIRM_SCENE_H_

#include <optional>
#include <vector>

#include "sirm/core.h"
#include "sirm/feature_map.h"
#include "sirm/random.h"

namespace sirm {

struct Component {
  Point center;
  double radius = 1.0;
  Label label = 0;
  double weight = 1.0;
  double flip_prob = 0.0;  // in [0, 1/2)
};

// Deterministic relabeling of a scene: x gets the label of its nearest anchor
// under `map` (earliest anchor on ties).
struct InducedLabeling {
  FeatureMap map;
  std::vector<Point> anchors;
  std::vector<Label> labels;

  Label Apply(const Point& x) const;
};

// A mixture of uniform distributions on balls. Sampling picks a component by
// weight, draws a uniform point in its ball, and emits the component label,
// replaced by a uniformly chosen other label with probability flip_prob.
// With a labeling attached, labels come from the labeling instead and are
// noiseless; the point stream is the same either way.
class Scene {
 public:
  Scene(int dim, int label_count, std::vector<Component> components,
        std::optional<InducedLabeling> labeling = std::nullopt);

  int dim() const { return dim_; }
  int label_count() const { return label_count_; }
  const std::vector<Component>& components() const { return components_; }
  const std::optional<InducedLabeling>& labeling() const { return labeling_; }

 private:
  int dim_;
  int label_count_;
  std::vector<Component> components_;
  std::optional<InducedLabeling> labeling_;
};

LabeledSet Sample(const Scene& scene, int n, SeedSpec seed);

// argmax_y eta(y | x). Outside every ball, falls back to the label of the
// nearest ball (by distance to its surface) and clears *in_support.
Label BayesLabel(const Scene& scene, const Point& x,
                 bool* in_support = nullptr);

// sum_i weight_i * flip_prob_i; 0 for relabeled scenes.
double BayesRisk(const Scene& scene);

// Smallest surface-to-surface distance between balls with different labels
// (+inf when only one label is present). Negative when such balls overlap.
double SceneMargin(const Scene& scene);

struct ShiftProblem {
  Scene source;
  Scene target;
  FeatureFamily family;
  std::vector<int> ground_truth;  // indices of maps intended as realizers
};

void ValidateProblem(const ShiftProblem& problem);

}  // namespace sirm

#endif  // SIRM_SCENE_H_
