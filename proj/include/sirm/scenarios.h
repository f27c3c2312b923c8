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

// The three two-dimensional toy problems, a Monte-Carlo certifier for the
// preserve / contract / unify properties of a feature map, and the two
// adversarial instance generators.

#ifndef SIRM_SCENARIOS_H_
#define SIRM_SCENARIOS_H_

#include <optional>
#include <string>
#include <utility>

#include "sirm/core.h"
#include "sirm/random.h"
#include "sirm/scene.h"

namespace sirm {

enum class Panel { kA, kB, kC };

// Accepts "a", "b", "c" (case-insensitive).
Panel ParsePanel(const std::string& id);
std::string PanelName(Panel panel);

// Every panel is built from balls of the given radius whose
// centers sit on a grid of pitch 2 * radius + gap; `shift` is the horizontal
// displacement of the target in panels a and b.
struct PanelGeometry {
  double radius = 1.0;
  double gap = 1.0;
  double shift = 8.0;
  double flip_prob = 0.05;
};

// Family is {project onto x, project onto y} in that order; ground truth is
// the y projection in all three panels.
//  a: source classes stacked vertically, so the x projection merges them.
//  b: source classes on a diagonal; the target is pushed right far enough
//     that its x projection leaves the source image.
//  c: same source as b; the target swaps the off-diagonal cells, so both
//     projections contract but only y keeps Bayes labels consistent.
ShiftProblem ShiftPanel(Panel panel, const PanelGeometry& geometry = {});

enum class Verdict { kPass, kFail, kInconclusive };
std::string VerdictString(Verdict v);

struct CertifyBudget {
  int source_samples = 4000;
  int target_samples = 2000;
  // Margins below margin_tol fail, above 2 * margin_tol pass.
  double margin_tol = 0.05;
  // Half-width of the band around rho / lambda where contraction is
  // undecided.
  double contract_tol = 0.02;
  double lambda = 4.0;
};

struct UnifyViolation {
  Point source_point;
  Point target_point;
  Label source_label = 0;
  Label target_label = 0;
  double distance = 0.0;
};

struct CertReport {
  int map_index = 0;
  Verdict preserves = Verdict::kInconclusive;
  Verdict contracts = Verdict::kInconclusive;
  Verdict unifies = Verdict::kInconclusive;
  double margin = 0.0;  // min mapped distance across Bayes classes; inf if one
  std::optional<double> beta;  // absent when contraction was not evaluated
  int unify_violations = 0;
  std::optional<UnifyViolation> worst_violation;  // the closest one
  int source_samples = 0;
  int target_samples = 0;
};

CertReport Certify(const ShiftProblem& problem, int map_index,
                   const CertifyBudget& budget, SeedSpec seed);

// Labels a target scene by the nearest induced source point: anchors are a
// dense_n source sample tagged with source Bayes labels, and a target point
// takes the label of its nearest anchor under the given map. Both twins keep
// the target components (noise removed) so their point streams coincide.
// Throws unless both maps pass preserve and contract certification.
std::pair<Scene, Scene> TwinTargets(const ShiftProblem& problem, int map1,
                                    int map2, int dense_n, SeedSpec seed,
                                    const CertifyBudget& budget = {});

// Monte-Carlo estimate of the fraction of `a`'s mass on which the two
// scenes' Bayes labels differ. Both must share dimension.
double DisagreementMass(const Scene& a, const Scene& b, int samples,
                        SeedSpec seed);

struct PerturbedInstance {
  ShiftProblem first;   // target labeled y1 at x; ground truth {map1}
  ShiftProblem second;  // target labeled y2 at x; ground truth {map2}
  Point anchor;         // x, the target point both targets sit on
  Point x1, x1_prime, x2, x2_prime;
  double ball_radius = 0.0;
  Label y1 = 0;
  Label y2 = 0;
  // Mass relocated from the original source into the four inserted balls.
  double moved_mass = 0.0;
  // Smallest mapped gap between differently-labeled balls involving an
  // inserted ball, under either map.
  double clearance = 0.0;
};

// Builds a source perturbation of mass eps_budget on which both maps
// preserve, together with two point-mass targets at one target point x that
// each map relates to the new source with opposite labels. map2 must
// preserve the source and send some target point away from the source image.
// The original components are scaled by 1 - eps_budget and four balls of
// mass eps_budget / 4 are added at x1, x1', x2, x2' with labels y1, y2, y2,
// y1, where x1 - x lies in the kernel of map1 and x2 - x in that of map2.
PerturbedInstance PerturbSource(const ShiftProblem& problem, int map1,
                                int map2, double eps_budget, SeedSpec seed,
                                const CertifyBudget& budget = {});

}  // namespace sirm

#endif  // SIRM_SCENARIOS_H_
