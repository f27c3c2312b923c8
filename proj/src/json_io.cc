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

#include "sirm/json_io.h"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sirm {
namespace {

Json Real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json PointJson(const Point& p) {
  return Json(std::vector<double>(p.coords().begin(), p.coords().end()));
}

Point PointFromJson(const Json& j, int dim, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw Error(what + ": expected an array of " + std::to_string(dim) +
                " numbers");
  }
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(what + ": coordinates must be numbers");
    v.push_back(x.get<double>());
  }
  return Point(std::move(v));
}

void CheckSchema(const Json& j, const std::string& what) {
  if (!j.is_object()) throw Error(what + ": expected a JSON object");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion) {
    throw Error(what + ": unsupported schema_version");
  }
}

template <typename T>
T Field(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw Error(what + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(what + ": field '" + key + "' has the wrong type");
  }
}

std::string ProvenanceName(FeatureFamily::Provenance p) {
  switch (p) {
    case FeatureFamily::Provenance::kExplicit:
      return "explicit";
    case FeatureFamily::Provenance::kCorEnumeration:
      return "cor";
    case FeatureFamily::Provenance::kProjRandom:
      return "proj_random";
    case FeatureFamily::Provenance::kProjGrid:
      return "proj_grid";
  }
  return "explicit";
}

FeatureFamily::Provenance ParseProvenance(const std::string& s) {
  if (s == "explicit") return FeatureFamily::Provenance::kExplicit;
  if (s == "cor") return FeatureFamily::Provenance::kCorEnumeration;
  if (s == "proj_random") return FeatureFamily::Provenance::kProjRandom;
  if (s == "proj_grid") return FeatureFamily::Provenance::kProjGrid;
  throw Error("family: unknown kind '" + s + "'");
}

Json LossJson(const std::optional<LossEstimate>& l) {
  if (!l) return nullptr;
  return Json{{"value", l->value}, {"miscount", l->miscount},
              {"count", l->count}};
}

}  // namespace

Json ToJson(const FeatureMap& map) {
  switch (map.kind()) {
    case FeatureMap::Kind::kIdentity:
      return Json{{"identity", true}};
    case FeatureMap::Kind::kCoordinateSubset:
      return Json{{"J", map.coordinates()}};
    case FeatureMap::Kind::kLinear: {
      Json rows = Json::array();
      for (int r = 0; r < map.input_dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < map.output_dim(); ++c) row.push_back(map.entry(r, c));
        rows.push_back(std::move(row));
      }
      return Json{{"matrix", std::move(rows)}};
    }
  }
  return nullptr;
}

FeatureMap FeatureMapFromJson(const Json& j, int dim, int output_dim) {
  const std::string what = "feature map";
  if (!j.is_object()) throw Error(what + ": expected an object");
  if (j.contains("identity")) {
    if (dim != output_dim) throw Error(what + ": identity needs D == K");
    return FeatureMap::Identity(dim);
  }
  if (j.contains("J")) {
    auto coords = Field<std::vector<int>>(j, "J", what);
    if (static_cast<int>(coords.size()) != output_dim) {
      throw Error(what + ": |J| must equal K");
    }
    return FeatureMap::CoordinateSubset(dim, std::move(coords));
  }
  if (j.contains("matrix")) {
    auto rows = Field<std::vector<std::vector<double>>>(j, "matrix", what);
    if (static_cast<int>(rows.size()) != dim) {
      throw Error(what + ": matrix must have D rows");
    }
    std::vector<double> flat;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != output_dim) {
        throw Error(what + ": matrix rows must have K entries");
      }
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return FeatureMap::Linear(dim, output_dim, std::move(flat));
  }
  throw Error(what + ": expected one of 'identity', 'J', 'matrix'");
}

Json ToJson(const FeatureFamily& family) {
  Json maps = Json::array();
  for (const auto& m : family.maps()) maps.push_back(ToJson(m));
  return Json{{"schema_version", kSchemaVersion},
              {"kind", ProvenanceName(family.provenance())},
              {"D", family.input_dim()},
              {"K", family.output_dim()},
              {"maps", std::move(maps)}};
}

FeatureFamily FeatureFamilyFromJson(const Json& j) {
  const std::string what = "family";
  CheckSchema(j, what);
  const int d = Field<int>(j, "D", what);
  const int k = Field<int>(j, "K", what);
  const auto kind = j.contains("kind")
                        ? ParseProvenance(Field<std::string>(j, "kind", what))
                        : FeatureFamily::Provenance::kExplicit;
  if (!j.contains("maps") || !j.at("maps").is_array()) {
    throw Error(what + ": missing array 'maps'");
  }
  std::vector<FeatureMap> maps;
  for (const auto& m : j.at("maps")) maps.push_back(FeatureMapFromJson(m, d, k));
  return FeatureFamily(std::move(maps), kind);
}

Json ToJson(const Scene& scene) {
  Json comps = Json::array();
  for (const auto& c : scene.components()) {
    comps.push_back(Json{{"center", PointJson(c.center)},
                         {"radius", c.radius},
                         {"label", c.label},
                         {"weight", c.weight},
                         {"flip_prob", c.flip_prob}});
  }
  Json j{{"schema_version", kSchemaVersion},
         {"dim", scene.dim()},
         {"label_count", scene.label_count()},
         {"components", std::move(comps)}};
  if (scene.labeling()) {
    const auto& l = *scene.labeling();
    Json anchors = Json::array();
    for (const auto& p : l.anchors) anchors.push_back(PointJson(p));
    j["labeling"] = Json{{"map", ToJson(l.map)},
                         {"output_dim", l.map.output_dim()},
                         {"anchors", std::move(anchors)},
                         {"labels", l.labels}};
  }
  return j;
}

Scene SceneFromJson(const Json& j) {
  const std::string what = "scene";
  CheckSchema(j, what);
  const int dim = Field<int>(j, "dim", what);
  const int labels = Field<int>(j, "label_count", what);
  if (dim < 1) throw Error(what + ": dim must be positive");
  if (!j.contains("components") || !j.at("components").is_array()) {
    throw Error(what + ": missing array 'components'");
  }
  std::vector<Component> comps;
  for (const auto& c : j.at("components")) {
    const std::string cw = what + " component";
    if (!c.is_object()) throw Error(cw + ": expected an object");
    if (!c.contains("center")) throw Error(cw + ": missing field 'center'");
    comps.push_back(Component{
        .center = PointFromJson(c.at("center"), dim, cw + " center"),
        .radius = Field<double>(c, "radius", cw),
        .label = Field<Label>(c, "label", cw),
        .weight = Field<double>(c, "weight", cw),
        .flip_prob = c.contains("flip_prob") ? Field<double>(c, "flip_prob", cw)
                                             : 0.0});
  }
  std::optional<InducedLabeling> labeling;
  if (j.contains("labeling") && !j.at("labeling").is_null()) {
    const Json& l = j.at("labeling");
    const std::string lw = what + " labeling";
    if (!l.is_object() || !l.contains("map") || !l.contains("anchors")) {
      throw Error(lw + ": expected map and anchors");
    }
    InducedLabeling ind{
        .map = FeatureMapFromJson(l.at("map"), dim,
                                  Field<int>(l, "output_dim", lw)),
        .anchors = {},
        .labels = Field<std::vector<Label>>(l, "labels", lw)};
    for (const auto& p : l.at("anchors")) {
      ind.anchors.push_back(PointFromJson(p, dim, lw + " anchor"));
    }
    labeling = std::move(ind);
  }
  return Scene(dim, labels, std::move(comps), std::move(labeling));
}

Json ToJson(const ShiftProblem& problem) {
  Json src = ToJson(problem.source);
  Json tgt = ToJson(problem.target);
  Json fam = ToJson(problem.family);
  src.erase("schema_version");
  tgt.erase("schema_version");
  fam.erase("schema_version");
  return Json{{"schema_version", kSchemaVersion},
              {"source", std::move(src)},
              {"target", std::move(tgt)},
              {"family", std::move(fam)},
              {"ground_truth", problem.ground_truth}};
}

ShiftProblem ShiftProblemFromJson(const Json& j) {
  const std::string what = "problem";
  CheckSchema(j, what);
  for (const char* key : {"source", "target", "family"}) {
    if (!j.contains(key)) throw Error(what + ": missing field '" + key + "'");
  }
  ShiftProblem p{.source = SceneFromJson(j.at("source")),
                 .target = SceneFromJson(j.at("target")),
                 .family = FeatureFamilyFromJson(j.at("family")),
                 .ground_truth = j.contains("ground_truth")
                                     ? Field<std::vector<int>>(
                                           j, "ground_truth", what)
                                     : std::vector<int>{}};
  ValidateProblem(p);
  return p;
}

Json ToJson(const LearnerOutput& out) {
  Json diags = Json::array();
  for (const auto& d : out.diagnostics) {
    Json margin = nullptr;
    if (d.source_margin) margin = Real(d.source_margin->AsDouble());
    diags.push_back(Json{
        {"map_index", d.map_index},
        {"source_loss", LossJson(d.source_loss)},
        {"source_margin", margin},
        {"target_margin",
         d.target_margin ? Real(*d.target_margin) : Json(nullptr)},
        {"target_loss", LossJson(d.target_loss)},
        {"score", d.score ? Real(*d.score) : Json(nullptr)},
        {"admitted", d.admitted}});
  }
  const auto& c = out.classifier;
  return Json{{"schema_version", kSchemaVersion},
              {"learner", out.learner},
              {"chosen_map_index", out.chosen_map_index},
              {"chosen_map",
               c.map() ? ToJson(*c.map()) : Json{{"identity", true}}},
              {"k", c.k()},
              {"training_size", c.train().size()},
              {"epsilon", Real(out.epsilon)},
              {"fallback", out.fallback},
              {"diagnostics", std::move(diags)}};
}

Json ToJson(const CertReport& r) {
  Json worst = nullptr;
  if (r.worst_violation) {
    const auto& w = *r.worst_violation;
    worst = Json{{"source_point", PointJson(w.source_point)},
                 {"target_point", PointJson(w.target_point)},
                 {"source_label", w.source_label},
                 {"target_label", w.target_label},
                 {"distance", w.distance}};
  }
  return Json{{"schema_version", kSchemaVersion},
              {"map_index", r.map_index},
              {"preserves", VerdictString(r.preserves)},
              {"contracts", VerdictString(r.contracts)},
              {"unifies", VerdictString(r.unifies)},
              {"margin", Real(r.margin)},
              {"beta", r.beta ? Real(*r.beta) : Json(nullptr)},
              {"unify_violations", r.unify_violations},
              {"worst_violation", std::move(worst)},
              {"source_samples", r.source_samples},
              {"target_samples", r.target_samples}};
}

Json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
}

void SaveJsonFile(const Json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error(path + ": write failed");
}

}  // namespace sirm
