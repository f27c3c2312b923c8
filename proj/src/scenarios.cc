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

#include "sirm/scenarios.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

#include "sirm/estimators.h"

namespace sirm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeedSpec Substream(SeedSpec seed, uint64_t tag) {
  return SeedSpec{seed.master_seed, DeriveSeed(seed.stream_id, tag, 0)};
}

// Images of all points, stored row-major.
std::vector<double> MapAll(const FeatureMap& map,
                           const std::vector<Point>& points) {
  const int k = map.output_dim();
  std::vector<double> out(points.size() * k);
  for (size_t i = 0; i < points.size(); ++i) {
    map.ApplyTo(points[i].coords(), std::span<double>(out).subspan(i * k, k));
  }
  return out;
}

double RowDistance2(const std::vector<double>& a, size_t i,
                    const std::vector<double>& b, size_t j, int k) {
  double s = 0.0;
  for (int c = 0; c < k; ++c) {
    const double d = a[i * k + c] - b[j * k + c];
    s += d * d;
  }
  return s;
}

std::vector<Label> BayesLabels(const Scene& scene,
                               const std::vector<Point>& points) {
  std::vector<Label> out;
  out.reserve(points.size());
  for (const Point& p : points) out.push_back(BayesLabel(scene, p));
  return out;
}

// Smallest mapped distance between points with different labels.
double InducedMargin(const FeatureMap& map, const std::vector<Point>& points,
                     const std::vector<Label>& labels) {
  const int k = map.output_dim();
  const auto img = MapAll(map, points);
  double best = kInf;
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (labels[i] == labels[j]) continue;
      best = std::min(best, RowDistance2(img, i, img, j, k));
    }
  }
  return std::sqrt(best);
}

Component PointMass(const Point& x, Label y) {
  return Component{.center = x, .radius = 1e-6, .label = y, .weight = 1.0,
                   .flip_prob = 0.0};
}

}  // namespace

Panel ParsePanel(const std::string& id) {
  std::string lower;
  for (char ch : id) lower.push_back(static_cast<char>(std::tolower(ch)));
  if (lower == "a") return Panel::kA;
  if (lower == "b") return Panel::kB;
  if (lower == "c") return Panel::kC;
  throw Error("unknown panel '" + id + "' (expected a, b or c)");
}

std::string PanelName(Panel panel) {
  switch (panel) {
    case Panel::kA:
      return "a";
    case Panel::kB:
      return "b";
    case Panel::kC:
      return "c";
  }
  return "?";
}

ShiftProblem ShiftPanel(Panel panel, const PanelGeometry& g) {
  if (!(g.radius > 0.0) || !(g.gap > 0.0)) {
    throw Error("panel geometry needs positive radius and gap");
  }
  if (!(g.flip_prob >= 0.0 && g.flip_prob < 0.5)) {
    throw Error("panel flip_prob must lie in [0, 1/2)");
  }
  const double c = 2.0 * g.radius + g.gap;
  auto ball = [&](double x, double y, Label label) {
    return Component{.center = Point{x, y}, .radius = g.radius,
                     .label = label, .weight = 0.5,
                     .flip_prob = g.flip_prob};
  };
  std::vector<Component> source;
  std::vector<Component> target;
  switch (panel) {
    case Panel::kA:
      if (!(g.shift > 0.0)) throw Error("panel a needs a positive shift");
      source = {ball(0, 0, 0), ball(0, c, 1)};
      target = {ball(g.shift, 0, 0), ball(g.shift, c, 1)};
      break;
    case Panel::kB:
      // The x image of the target has to clear the source image by a gap.
      if (!(g.shift > c + 2.0 * g.radius + g.gap)) {
        throw Error("panel b needs shift > 4 * radius + 2 * gap");
      }
      source = {ball(0, 0, 0), ball(c, c, 1)};
      target = {ball(g.shift, 0, 0), ball(g.shift + c, c, 1)};
      break;
    case Panel::kC:
      source = {ball(0, 0, 0), ball(c, c, 1)};
      target = {ball(0, c, 1), ball(c, 0, 0)};
      break;
  }
  FeatureFamily family = FeatureFamily::FullCor(2, 1);
  return ShiftProblem{.source = Scene(2, 2, std::move(source)),
                      .target = Scene(2, 2, std::move(target)),
                      .family = std::move(family),
                      .ground_truth = {1}};
}

std::string VerdictString(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

CertReport Certify(const ShiftProblem& problem, int map_index,
                   const CertifyBudget& budget, SeedSpec seed) {
  ValidateProblem(problem);
  if (map_index < 0 || map_index >= problem.family.size()) {
    throw Error("certify: map index out of range");
  }
  if (budget.source_samples < 2 || budget.target_samples < 1 ||
      !(budget.margin_tol > 0.0) || !(budget.contract_tol >= 0.0) ||
      !(budget.lambda > 2.0)) {
    throw Error("certify: invalid budget");
  }
  const FeatureMap& map = problem.family.map(map_index);
  const LabeledSet src = Sample(problem.source, budget.source_samples,
                                Substream(seed, 1));
  const LabeledSet tgt = Sample(problem.target, budget.target_samples,
                                Substream(seed, 2));
  const auto src_labels = BayesLabels(problem.source, src.points());
  const auto tgt_labels = BayesLabels(problem.target, tgt.points());

  CertReport r;
  r.map_index = map_index;
  r.source_samples = src.size();
  r.target_samples = tgt.size();
  r.margin = InducedMargin(map, src.points(), src_labels);
  if (r.margin > 2.0 * budget.margin_tol) {
    r.preserves = Verdict::kPass;
  } else if (r.margin < budget.margin_tol) {
    r.preserves = Verdict::kFail;
  }

  if (r.preserves == Verdict::kFail) {
    r.contracts = Verdict::kFail;
  } else if (r.preserves == Verdict::kPass) {
    r.beta = BetaEstimate(map, UnlabeledSet::FromLabeled(src),
                          UnlabeledSet::FromLabeled(tgt));
    const double limit = r.margin / budget.lambda;
    if (*r.beta < limit - budget.contract_tol) {
      r.contracts = Verdict::kPass;
    } else if (*r.beta > limit + budget.contract_tol) {
      r.contracts = Verdict::kFail;
    }
  }

  if (r.preserves == Verdict::kPass) {
    const int k = map.output_dim();
    const auto s_img = MapAll(map, src.points());
    const auto t_img = MapAll(map, tgt.points());
    const double radius = r.margin / 2.0;
    const double radius2 = radius * radius;
    double closest = kInf;
    for (int j = 0; j < tgt.size(); ++j) {
      for (int i = 0; i < src.size(); ++i) {
        if (src_labels[i] == tgt_labels[j]) continue;
        const double d2 = RowDistance2(s_img, i, t_img, j, k);
        if (!(d2 < radius2)) continue;
        ++r.unify_violations;
        if (d2 < closest) {
          closest = d2;
          r.worst_violation = UnifyViolation{
              .source_point = src.point(i),
              .target_point = tgt.point(j),
              .source_label = src_labels[i],
              .target_label = tgt_labels[j],
              .distance = std::sqrt(d2)};
        }
      }
    }
    r.unifies = r.unify_violations == 0 ? Verdict::kPass : Verdict::kFail;
  }
  return r;
}

std::pair<Scene, Scene> TwinTargets(const ShiftProblem& problem, int map1,
                                    int map2, int dense_n, SeedSpec seed,
                                    const CertifyBudget& budget) {
  ValidateProblem(problem);
  if (dense_n < 1) throw Error("twin_targets: dense_n must be positive");
  for (int m : {map1, map2}) {
    if (m < 0 || m >= problem.family.size()) {
      throw Error("twin_targets: map index out of range");
    }
    const CertReport cert = Certify(problem, m, budget, Substream(seed, 10));
    if (cert.preserves != Verdict::kPass || cert.contracts != Verdict::kPass) {
      throw Error("twin_targets: map " + std::to_string(m) +
                  " does not pass preserve and contract certification "
                  "(preserves " + VerdictString(cert.preserves) +
                  ", contracts " + VerdictString(cert.contracts) + ")");
    }
  }
  const LabeledSet dense = Sample(problem.source, dense_n, Substream(seed, 11));
  const auto labels = BayesLabels(problem.source, dense.points());

  std::vector<Component> comps = problem.target.components();
  for (Component& c : comps) c.flip_prob = 0.0;
  auto twin = [&](int m) {
    return Scene(problem.target.dim(), problem.target.label_count(), comps,
                 InducedLabeling{.map = problem.family.map(m),
                                 .anchors = dense.points(),
                                 .labels = labels});
  };
  return {twin(map1), twin(map2)};
}

double DisagreementMass(const Scene& a, const Scene& b, int samples,
                        SeedSpec seed) {
  if (a.dim() != b.dim()) throw Error("disagreement: dimension mismatch");
  if (samples < 1) throw Error("disagreement: samples must be positive");
  const LabeledSet s = Sample(a, samples, seed);
  int differ = 0;
  for (const Point& p : s.points()) {
    if (BayesLabel(a, p) != BayesLabel(b, p)) ++differ;
  }
  return static_cast<double>(differ) / samples;
}

namespace {

// Columns of the D x K matrix representing the map, as D-vectors.
std::vector<std::vector<double>> Columns(const FeatureMap& map) {
  const int d = map.input_dim();
  const int k = map.output_dim();
  std::vector<std::vector<double>> cols(k, std::vector<double>(d, 0.0));
  for (int c = 0; c < k; ++c) {
    switch (map.kind()) {
      case FeatureMap::Kind::kIdentity:
        cols[c][c] = 1.0;
        break;
      case FeatureMap::Kind::kCoordinateSubset:
        cols[c][map.coordinates()[c]] = 1.0;
        break;
      case FeatureMap::Kind::kLinear:
        for (int r = 0; r < d; ++r) cols[c][r] = map.entry(r, c);
        break;
    }
  }
  return cols;
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// A unit vector v with map(v) == 0 and other(v) != 0, if one exists. The
// kernel of x -> x A is the orthogonal complement of A's columns; basis
// vectors are projected onto it in order and the first usable one is kept.
std::optional<std::vector<double>> KernelDirection(const FeatureMap& map,
                                                   const FeatureMap& other) {
  const int d = map.input_dim();
  std::vector<std::vector<double>> basis;
  for (auto col : Columns(map)) {
    for (const auto& b : basis) {
      const double p = Dot(col, b);
      for (int i = 0; i < d; ++i) col[i] -= p * b[i];
    }
    const double norm = std::sqrt(Dot(col, col));
    if (norm < 1e-12) continue;
    for (double& v : col) v /= norm;
    basis.push_back(std::move(col));
  }
  std::vector<double> image(other.output_dim());
  for (int j = 0; j < d; ++j) {
    std::vector<double> v(d, 0.0);
    v[j] = 1.0;
    for (const auto& b : basis) {
      const double p = Dot(v, b);
      for (int i = 0; i < d; ++i) v[i] -= p * b[i];
    }
    const double norm = std::sqrt(Dot(v, v));
    if (norm < 1e-9) continue;
    for (double& x : v) x /= norm;
    other.ApplyTo(v, image);
    if (std::sqrt(Dot(image, image)) > 1e-9) return v;
  }
  return std::nullopt;
}

Point Offset(const Point& x, const std::vector<double>& dir, double t) {
  std::vector<double> out(x.coords().begin(), x.coords().end());
  for (size_t i = 0; i < out.size(); ++i) out[i] += t * dir[i];
  return Point(std::move(out));
}

struct Candidate {
  Point x1, x1p, x2, x2p;
};

struct Ball {
  Point center;
  double radius;
  Label label;
};

class SurgeryScorer {
 public:
  SurgeryScorer(const Scene& source, const FeatureMap& m1,
                const FeatureMap& m2, double s, Label y1, Label y2)
      : source_(source), m1_(m1), m2_(m2), s_(s), y1_(y1), y2_(y2) {}

  // Smallest mapped gap between differently-labeled balls where at least
  // one is inserted, over both maps; -inf when a hard constraint fails.
  double Fitness(const Candidate& c) const {
    const double lo = -kInf;
    const double d1_near = MappedDistance(m1_, c.x1, c.x1p);
    const double d1_far = MappedDistance(m1_, c.x1, c.x2);
    const double d2_near = MappedDistance(m2_, c.x2, c.x2p);
    const double d2_far = MappedDistance(m2_, c.x1, c.x2);
    if (!(d1_near > 0.0) || d1_near > 0.5 * d1_far) return lo;
    if (!(d2_near > 0.0) || d2_near > 0.5 * d2_far) return lo;
    const std::vector<Ball> inserted = {{c.x1, s_, y1_},
                                        {c.x1p, s_, y2_},
                                        {c.x2, s_, y2_},
                                        {c.x2p, s_, y1_}};
    for (size_t i = 0; i < inserted.size(); ++i) {
      for (size_t j = i + 1; j < inserted.size(); ++j) {
        if (EuclideanDistance(inserted[i].center, inserted[j].center) <=
            4.0 * s_) {
          return lo;
        }
      }
    }
    double fit = kInf;
    for (const FeatureMap* m : {&m1_, &m2_}) {
      const double lip = m->LipschitzBound();
      auto gap = [&](const Ball& a, const Ball& b) {
        return MappedDistance(*m, a.center, b.center) -
               (a.radius + b.radius) * lip;
      };
      for (size_t i = 0; i < inserted.size(); ++i) {
        for (size_t j = i + 1; j < inserted.size(); ++j) {
          if (inserted[i].label != inserted[j].label) {
            fit = std::min(fit, gap(inserted[i], inserted[j]));
          }
        }
        for (const Component& comp : source_.components()) {
          if (comp.label == inserted[i].label) continue;
          fit = std::min(fit, gap(inserted[i],
                                  Ball{comp.center, comp.radius, comp.label}));
        }
      }
    }
    return fit;
  }

 private:
  const Scene& source_;
  const FeatureMap& m1_;
  const FeatureMap& m2_;
  double s_;
  Label y1_, y2_;
};

}  // namespace

PerturbedInstance PerturbSource(const ShiftProblem& problem, int map1,
                                int map2, double eps_budget, SeedSpec seed,
                                const CertifyBudget& budget) {
  ValidateProblem(problem);
  const int fam = problem.family.size();
  if (map1 < 0 || map1 >= fam || map2 < 0 || map2 >= fam) {
    throw Error("perturb_source: map index out of range");
  }
  if (map1 == map2) throw Error("perturb_source: the two maps must differ");
  if (!(eps_budget > 0.0 && eps_budget < 1.0)) {
    throw Error("perturb_source: eps_budget must lie in (0, 1)");
  }
  if (problem.source.label_count() < 2) {
    throw Error("perturb_source: needs at least two labels");
  }
  const FeatureMap& m1 = problem.family.map(map1);
  const FeatureMap& m2 = problem.family.map(map2);

  const CertReport cert2 = Certify(problem, map2, budget, Substream(seed, 20));
  if (cert2.preserves != Verdict::kPass) {
    throw Error("perturb_source: map " + std::to_string(map2) +
                " does not preserve the source (" +
                VerdictString(cert2.preserves) + ")");
  }

  // x: the target point whose map2 image is farthest from the source sample.
  const LabeledSet src = Sample(problem.source, budget.source_samples,
                                Substream(seed, 21));
  const LabeledSet tgt = Sample(problem.target, budget.target_samples,
                                Substream(seed, 22));
  const auto src_labels = BayesLabels(problem.source, src.points());
  const int k2 = m2.output_dim();
  const auto s2 = MapAll(m2, src.points());
  const auto t2 = MapAll(m2, tgt.points());
  int x_index = -1;
  double x_gap = 0.0;
  for (int j = 0; j < tgt.size(); ++j) {
    double nearest = kInf;
    for (int i = 0; i < src.size(); ++i) {
      nearest = std::min(nearest, RowDistance2(t2, j, s2, i, k2));
    }
    if (std::sqrt(nearest) > x_gap) {
      x_gap = std::sqrt(nearest);
      x_index = j;
    }
  }
  if (x_index < 0 || x_gap <= budget.margin_tol) {
    throw Error("perturb_source: map " + std::to_string(map2) +
                " sends no target point away from the source image");
  }
  const Point x = tgt.point(x_index);

  // y1 is the label map1 transports to x; y2 is any other label.
  Label y1 = 0;
  {
    const int k1 = m1.output_dim();
    const auto s1 = MapAll(m1, src.points());
    const auto x1img = MapAll(m1, {x});
    double best = kInf;
    for (int i = 0; i < src.size(); ++i) {
      const double d = RowDistance2(x1img, 0, s1, i, k1);
      if (d < best) {
        best = d;
        y1 = src_labels[i];
      }
    }
  }
  const Label y2 = y1 == 0 ? 1 : 0;

  const auto v1 = KernelDirection(m1, m2);
  const auto v2 = KernelDirection(m2, m1);
  if (!v1 || !v2) {
    throw Error("perturb_source: the kernels of the two maps are nested");
  }

  // Scale of the instance: diagonal of the box holding every ball.
  const int dim = problem.source.dim();
  std::vector<double> lo(dim, kInf), hi(dim, -kInf);
  for (const Scene* scene : {&problem.source, &problem.target}) {
    for (const Component& c : scene->components()) {
      for (int i = 0; i < dim; ++i) {
        lo[i] = std::min(lo[i], c.center[i] - c.radius);
        hi[i] = std::max(hi[i], c.center[i] + c.radius);
      }
    }
  }
  double diag2 = 0.0;
  for (int i = 0; i < dim; ++i) diag2 += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  const double scale = std::sqrt(diag2);
  const double s = 0.005 * scale;

  SurgeryScorer scorer(problem.source, m1, m2, s, y1, y2);
  Rng rng(Substream(seed, 23));
  auto random_offset = [&](const Point& p, double reach) {
    std::vector<double> dir(dim);
    double norm = 0.0;
    for (double& v : dir) {
      v = rng.Normal();
      norm += v * v;
    }
    norm = std::sqrt(norm);
    const double r = reach * rng.Uniform();
    std::vector<double> out(p.coords().begin(), p.coords().end());
    if (norm > 0.0) {
      for (int i = 0; i < dim; ++i) out[i] += r * dir[i] / norm;
    }
    return Point(std::move(out));
  };

  constexpr int kGlobalIterations = 4000;
  constexpr int kLocalIterations = 2000;
  std::optional<Candidate> best;
  double best_fit = -kInf;
  double best_t1 = 0.0, best_t2 = 0.0;
  for (int it = 0; it < kGlobalIterations; ++it) {
    const double ta = rng.Uniform(-scale, scale);
    const double tb = rng.Uniform(-scale, scale);
    Candidate c{.x1 = Offset(x, *v1, ta), .x1p = {}, .x2 = Offset(x, *v2, tb),
                .x2p = {}};
    c.x1p = random_offset(c.x1, 0.5 * scale);
    c.x2p = random_offset(c.x2, 0.5 * scale);
    const double f = scorer.Fitness(c);
    if (f > best_fit) {
      best_fit = f;
      best = c;
      best_t1 = ta;
      best_t2 = tb;
    }
  }
  if (best) {
    for (int it = 0; it < kLocalIterations; ++it) {
      const double step =
          0.1 * scale * (1.0 - static_cast<double>(it) / kLocalIterations);
      const double ta = best_t1 + step * rng.Normal();
      const double tb = best_t2 + step * rng.Normal();
      Candidate c{.x1 = Offset(x, *v1, ta), .x1p = {},
                  .x2 = Offset(x, *v2, tb), .x2p = {}};
      c.x1p = random_offset(
          Offset(best->x1p, *v1, ta - best_t1), step);
      c.x2p = random_offset(
          Offset(best->x2p, *v2, tb - best_t2), step);
      const double f = scorer.Fitness(c);
      if (f > best_fit) {
        best_fit = f;
        best = c;
        best_t1 = ta;
        best_t2 = tb;
      }
    }
  }
  if (!best || !(best_fit > 0.0)) {
    throw Error("perturb_source: geometry cannot host the four inserted balls");
  }

  std::vector<Component> comps = problem.source.components();
  for (Component& c : comps) c.weight *= 1.0 - eps_budget;
  const double w = eps_budget / 4.0;
  for (const auto& [center, label] :
       std::vector<std::pair<Point, Label>>{{best->x1, y1},
                                            {best->x1p, y2},
                                            {best->x2, y2},
                                            {best->x2p, y1}}) {
    comps.push_back(Component{.center = center, .radius = s, .label = label,
                              .weight = w, .flip_prob = 0.0});
  }
  const int labels = problem.source.label_count();
  Scene source(dim, labels, comps);
  auto make = [&](Label y, int truth) {
    return ShiftProblem{.source = source,
                        .target = Scene(dim, labels, {PointMass(x, y)}),
                        .family = problem.family,
                        .ground_truth = {truth}};
  };
  return PerturbedInstance{.first = make(y1, map1),
                           .second = make(y2, map2),
                           .anchor = x,
                           .x1 = best->x1,
                           .x1_prime = best->x1p,
                           .x2 = best->x2,
                           .x2_prime = best->x2p,
                           .ball_radius = s,
                           .y1 = y1,
                           .y2 = y2,
                           .moved_mass = eps_budget,
                           .clearance = best_fit};
}

}  // namespace sirm
