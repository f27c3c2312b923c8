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

#include "sirm/scene.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sirm {

Label InducedLabeling::Apply(const Point& x) const {
  if (anchors.empty()) throw Error("induced labeling has no anchors");
  const Point fx = map.Apply(x);
  std::vector<double> fa(map.output_dim());
  double best = std::numeric_limits<double>::infinity();
  Label label = labels.front();
  for (size_t i = 0; i < anchors.size(); ++i) {
    map.ApplyTo(anchors[i].coords(), fa);
    const double d = SquaredDistance(fx.coords(), fa);
    if (d < best) {
      best = d;
      label = labels[i];
    }
  }
  return label;
}

Scene::Scene(int dim, int label_count, std::vector<Component> components,
             std::optional<InducedLabeling> labeling)
    : dim_(dim),
      label_count_(label_count),
      components_(std::move(components)),
      labeling_(std::move(labeling)) {
  if (dim < 1) throw Error("scene dimension must be at least 1");
  if (label_count < 1) throw Error("scene label count must be at least 1");
  if (components_.empty()) throw Error("scene has no components");
  double total = 0.0;
  for (size_t i = 0; i < components_.size(); ++i) {
    const Component& c = components_[i];
    const std::string where = "component " + std::to_string(i) + ": ";
    if (c.center.dim() != dim) throw Error(where + "center dimension mismatch");
    if (!(c.radius > 0.0) || !std::isfinite(c.radius)) {
      throw Error(where + "radius must be positive");
    }
    if (c.label < 0 || c.label >= label_count) {
      throw Error(where + "label out of range");
    }
    if (!(c.weight > 0.0)) throw Error(where + "weight must be positive");
    if (!(c.flip_prob >= 0.0 && c.flip_prob < 0.5)) {
      throw Error(where + "flip_prob must lie in [0, 1/2)");
    }
    if (c.flip_prob > 0.0 && label_count < 2) {
      throw Error(where + "label noise needs at least two labels");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error("scene weights do not sum to 1");
  if (labeling_) {
    if (labeling_->map.input_dim() != dim) {
      throw Error("labeling map dimension mismatch");
    }
    if (labeling_->anchors.size() != labeling_->labels.size() ||
        labeling_->anchors.empty()) {
      throw Error("labeling anchors and labels must be non-empty and aligned");
    }
    for (size_t i = 0; i < labeling_->anchors.size(); ++i) {
      if (labeling_->anchors[i].dim() != dim) {
        throw Error("labeling anchor dimension mismatch");
      }
      if (labeling_->labels[i] < 0 || labeling_->labels[i] >= label_count) {
        throw Error("labeling label out of range");
      }
    }
  }
}

LabeledSet Sample(const Scene& scene, int n, SeedSpec seed) {
  if (n < 0) throw Error("sample size must be non-negative");
  Rng rng(seed);
  const auto& comps = scene.components();
  const int d = scene.dim();
  LabeledSet out(d, scene.label_count());
  std::vector<double> dir(d);
  for (int s = 0; s < n; ++s) {
    // Every draw consumes the same number of variates, so the point stream
    // does not depend on labels or noise levels.
    const double u_comp = rng.Uniform();
    for (double& v : dir) v = rng.Normal();
    const double u_radius = rng.Uniform();
    const double u_flip = rng.Uniform();
    const double u_other = rng.Uniform();

    size_t ci = comps.size() - 1;
    double acc = 0.0;
    for (size_t i = 0; i < comps.size(); ++i) {
      acc += comps[i].weight;
      if (u_comp < acc) {
        ci = i;
        break;
      }
    }
    const Component& c = comps[ci];
    double norm = std::sqrt(std::inner_product(dir.begin(), dir.end(),
                                               dir.begin(), 0.0));
    if (norm == 0.0) {
      dir.assign(d, 0.0);
      dir[0] = 1.0;
      norm = 1.0;
    }
    const double r = c.radius * std::pow(u_radius, 1.0 / d);
    std::vector<double> x(d);
    for (int j = 0; j < d; ++j) x[j] = c.center[j] + r * dir[j] / norm;
    Point p(std::move(x));

    Label y;
    if (scene.labeling()) {
      y = scene.labeling()->Apply(p);
    } else {
      y = c.label;
      if (u_flip < c.flip_prob) {
        const int others = scene.label_count() - 1;
        y = std::min(static_cast<Label>(u_other * others), others - 1);
        if (y >= c.label) ++y;
      }
    }
    out.Add(std::move(p), y);
  }
  return out;
}

Label BayesLabel(const Scene& scene, const Point& x, bool* in_support) {
  if (x.dim() != scene.dim()) throw Error("point dimension does not match scene");
  const auto& comps = scene.components();
  bool inside = false;
  size_t nearest = 0;
  double nearest_gap = std::numeric_limits<double>::infinity();
  std::vector<double> score(scene.label_count(), 0.0);
  const int labels = scene.label_count();
  for (size_t i = 0; i < comps.size(); ++i) {
    const Component& c = comps[i];
    const double dist = EuclideanDistance(x, c.center);
    if (dist - c.radius < nearest_gap) {
      nearest_gap = dist - c.radius;
      nearest = i;
    }
    if (dist > c.radius) continue;
    inside = true;
    // Density of a uniform ball is proportional to weight / radius^dim.
    const double density = c.weight / std::pow(c.radius, scene.dim());
    for (int y = 0; y < labels; ++y) {
      const double p = y == c.label ? 1.0 - c.flip_prob
                                    : c.flip_prob / std::max(1, labels - 1);
      score[y] += density * p;
    }
  }
  if (in_support) *in_support = inside;
  if (scene.labeling()) return scene.labeling()->Apply(x);
  if (!inside) return comps[nearest].label;
  Label best = 0;
  for (int y = 1; y < labels; ++y) {
    if (score[y] > score[best]) best = y;
  }
  return best;
}

double BayesRisk(const Scene& scene) {
  if (scene.labeling()) return 0.0;
  double r = 0.0;
  for (const auto& c : scene.components()) r += c.weight * c.flip_prob;
  return r;
}

double SceneMargin(const Scene& scene) {
  const auto& comps = scene.components();
  double margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < comps.size(); ++i) {
    for (size_t j = i + 1; j < comps.size(); ++j) {
      if (comps[i].label == comps[j].label) continue;
      margin = std::min(margin, EuclideanDistance(comps[i].center,
                                                  comps[j].center) -
                                    comps[i].radius - comps[j].radius);
    }
  }
  return margin;
}

void ValidateProblem(const ShiftProblem& problem) {
  if (problem.source.dim() != problem.target.dim() ||
      problem.family.input_dim() != problem.source.dim()) {
    throw Error("source, target, and family dimensions must agree");
  }
  if (problem.source.label_count() != problem.target.label_count()) {
    throw Error("source and target label counts differ");
  }
  for (int g : problem.ground_truth) {
    if (g < 0 || g >= problem.family.size()) {
      throw Error("ground-truth map index out of range");
    }
  }
}

}  // namespace sirm
