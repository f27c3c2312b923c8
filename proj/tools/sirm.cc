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

// sirm: generate shift problems, train the selection learners, certify maps,
// probe distance dimension, run seeded sweeps and plot them.
//
// Exit codes: 0 success, 2 usage or input error, 1 internal error. Machine
// output goes to files or stdout; progress and summaries go to stderr.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sirm/csv.h"
#include "sirm/estimators.h"
#include "sirm/experiment.h"
#include "sirm/json_io.h"
#include "sirm/learners.h"
#include "sirm/parallel.h"
#include "sirm/plot.h"
#include "sirm/scenarios.h"
#include "sirm/shattering.h"
#include "sirm/sweep.h"

namespace sirm {
namespace {

namespace fs = std::filesystem;

// Options shared by commands that need a problem.
struct ProblemOptions {
  std::string panel;
  std::string spec;
  double flip_prob = PanelGeometry{}.flip_prob;

  void Add(CLI::App* cmd) {
    auto* p = cmd->add_option("--panel", panel, "Toy panel: a, b or c");
    auto* s = cmd->add_option("--spec", spec, "Problem JSON file");
    p->excludes(s);
    cmd->add_option("--flip-prob", flip_prob,
                    "Label noise of the panel balls");
  }

  ShiftProblem Resolve() const {
    if (!spec.empty()) return ShiftProblemFromJson(LoadJsonFile(spec));
    if (panel.empty()) throw Error("one of --panel or --spec is required");
    PanelGeometry g;
    g.flip_prob = flip_prob;
    return ShiftPanel(ParsePanel(panel), g);
  }
};

// Options shared by commands that run a learner.
struct LearnerOptions {
  std::optional<int> k;
  double lambda = 4.0;
  std::string epsilon_mode = "relative";

  void Add(CLI::App* cmd) {
    cmd->add_option("--k", k, "Fixed neighbor count (default ceil(ln^2 n))");
    cmd->add_option("--lambda", lambda, "Contraction constant, > 2");
    cmd->add_option("--epsilon-mode", epsilon_mode,
                    "paper | relative | fixed:<value>");
  }

  LearnerConfig Resolve() const {
    LearnerConfig cfg;
    cfg.lambda = lambda;
    if (k) {
      if (*k < 1) throw Error("--k must be positive");
      cfg.k_schedule = KSchedule::Fixed(*k);
    }
    if (epsilon_mode == "paper") {
      cfg.admission = LearnerConfig::Admission::kAbsolute;
    } else if (epsilon_mode == "relative") {
      cfg.admission = LearnerConfig::Admission::kRelativeToBest;
    } else if (epsilon_mode.rfind("fixed:", 0) == 0) {
      const std::string v = epsilon_mode.substr(6);
      size_t pos = 0;
      double value = 0.0;
      try {
        value = std::stod(v, &pos);
      } catch (const std::logic_error&) {
        pos = 0;
      }
      if (v.empty() || pos != v.size() || !(value >= 0.0)) {
        throw Error("--epsilon-mode fixed:<value> needs a non-negative number");
      }
      cfg.epsilon_rule = LearnerConfig::EpsilonRule::kFixed;
      cfg.epsilon_value = value;
      cfg.admission = LearnerConfig::Admission::kRelativeToBest;
    } else {
      throw Error("unknown --epsilon-mode '" + epsilon_mode + "'");
    }
    cfg.Validate();
    return cfg;
  }
};

std::vector<int> ParseIntList(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::logic_error&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) {
      throw Error(std::string(flag) + ": expected a comma-separated list of "
                                      "integers, got '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(std::string(flag) + ": empty list");
  return out;
}

// "1-5" or "1,3,4".
std::vector<int> ParseSizes(const std::string& text) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) return ParseIntList(text, "--sizes");
  const auto lo = ParseIntList(text.substr(0, dash), "--sizes");
  const auto hi = ParseIntList(text.substr(dash + 1), "--sizes");
  if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) {
    throw Error("--sizes: bad range '" + text + "'");
  }
  std::vector<int> out;
  for (int s = lo[0]; s <= hi[0]; ++s) out.push_back(s);
  return out;
}

int ResolveThreads(std::optional<int> requested) {
  int threads = requested ? *requested : DefaultThreadCount();
  if (threads < 1) throw Error("--threads must be positive");
  if (const char* env = std::getenv("SIRM_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return threads;
}

void EmitJson(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    SaveJsonFile(j, out);
  }
}

// --- scenario ---------------------------------------------------------------

struct ScenarioCmd {
  ProblemOptions problem;
  int n = 2000;
  int m = 50;
  int eval_n = 10000;
  uint64_t seed = 0;
  std::string out;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "scenario", "Write a problem JSON and sampled CSV datasets");
    problem.Add(cmd);
    cmd->add_option("--n", n, "Source sample size");
    cmd->add_option("--m", m, "Target sample size");
    cmd->add_option("--eval-n", eval_n, "Held-out target sample size");
    cmd->add_option("--seed", seed, "Trial seed");
    cmd->add_option("--out", out, "Output directory")->required();
    cmd->callback([this] { Run(); });
  }

  void Run() {
    if (n < 0 || m < 0 || eval_n < 0) throw Error("sizes must be non-negative");
    const ShiftProblem p = problem.Resolve();
    const TrialData data = GenerateTrialData(p, n, m, eval_n, seed);
    fs::create_directories(out);
    const fs::path dir(out);
    SaveJsonFile(ToJson(p), (dir / "problem.json").string());
    SaveCsv(data.source, (dir / "source.csv").string());
    SaveCsv(data.target, (dir / "target.csv").string());
    SaveUnlabeledCsv(UnlabeledSet::FromLabeled(data.target),
                     (dir / "target_unlabeled.csv").string());
    SaveCsv(data.target_eval, (dir / "eval.csv").string());
    std::cerr << "wrote problem.json, source.csv (" << n << "), target.csv ("
              << m << "), target_unlabeled.csv, eval.csv (" << eval_n
              << ") to " << out << '\n';
  }
};

// --- train ------------------------------------------------------------------

struct TrainCmd {
  ProblemOptions problem;
  LearnerOptions learner;
  std::string regime;
  std::string source;
  std::string target;
  std::string eval;
  std::string out;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("train", "Select a feature map and train");
    problem.Add(cmd);
    learner.Add(cmd);
    cmd->add_option("--regime", regime,
                    "source-only | unlabeled | validate | oracle")
        ->required();
    cmd->add_option("--source", source, "Labeled source CSV")->required();
    cmd->add_option("--target", target,
                    "Target CSV: unlabeled for 'unlabeled', labeled for "
                    "'validate'");
    cmd->add_option("--eval", eval, "Labeled target CSV for held-out risk");
    cmd->add_option("--out", out, "LearnerOutput JSON path (default stdout)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    const Regime r = ParseRegime(regime);
    const ShiftProblem p = problem.Resolve();
    const LearnerConfig cfg = learner.Resolve();
    const int labels = p.source.label_count();
    const LabeledSet s = LoadCsv(source, labels);
    if (s.dim() != p.source.dim()) {
      throw Error(source + ": dimension does not match the problem");
    }
    LabeledSet t(p.source.dim(), labels);
    if (r == Regime::kUnlabeled || r == Regime::kValidate) {
      if (target.empty()) {
        throw Error("regime '" + regime + "' needs --target");
      }
      const bool labeled = CsvHasLabels(target);
      if (r == Regime::kUnlabeled && labeled) {
        throw Error(target + ": the unlabeled regime takes a target CSV "
                             "without a y column");
      }
      if (r == Regime::kValidate && !labeled) {
        throw Error(target + ": the validate regime takes a labeled target "
                             "CSV");
      }
      if (labeled) {
        t = LoadCsv(target, labels);
      } else {
        const UnlabeledSet u = LoadUnlabeledCsv(target);
        for (const Point& x : u.points()) t.Add(x, 0);
      }
      if (t.dim() != p.source.dim()) {
        throw Error(target + ": dimension does not match the problem");
      }
    }
    const LearnerOutput result = RunRegime(r, s, t, p, cfg);
    Json j = ToJson(result);
    std::cerr << RegimeName(r) << ": chose map " << result.chosen_map_index
              << " (" << p.family.map(result.chosen_map_index).Describe()
              << ")" << (result.fallback ? " [fallback]" : "") << '\n';
    if (!eval.empty()) {
      const LabeledSet e = LoadCsv(eval, labels);
      const LossEstimate risk = EmpiricalRisk(result.classifier, e);
      j["target_risk"] = risk.value;
      std::cerr << "held-out target risk: " << FormatReal(risk.value) << " ("
                << risk.miscount << "/" << risk.count << ")\n";
    }
    EmitJson(j, out);
  }
};

// --- sweep ------------------------------------------------------------------

struct SweepCmd {
  ProblemOptions problem;
  LearnerOptions learner;
  std::string learners = "source-only";
  std::string n_grid = "250,1000,4000";
  std::string m_grid = "50";
  int trials = 20;
  uint64_t seed = 0;
  int eval_n = 10000;
  std::optional<int> threads;
  std::string out;
  std::string summary;
  std::string timings;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "Seeded multi-trial sweep over n");
    problem.Add(cmd);
    learner.Add(cmd);
    cmd->add_option("--learner", learners,
                    "Comma-separated: source-only, unlabeled, validate, "
                    "oracle");
    cmd->add_option("--n", n_grid, "Comma-separated source sizes");
    cmd->add_option("--m", m_grid, "Comma-separated target sizes");
    cmd->add_option("--trials", trials, "Trials per cell");
    cmd->add_option("--seed", seed, "Master seed");
    cmd->add_option("--eval-n", eval_n, "Held-out sample size per trial");
    cmd->add_option("--threads", threads,
                    "Worker threads (capped by SIRM_THREADS)");
    cmd->add_option("--out", out, "Record CSV path")->required();
    cmd->add_option("--summary", summary,
                    "Summary JSON path (default <out>.summary.json)");
    cmd->add_option("--timings", timings, "Optional per-record timing CSV");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    SweepConfig cfg{.problem = problem.Resolve(),
                    .learners = {},
                    .n_grid = ParseIntList(n_grid, "--n"),
                    .m_grid = ParseIntList(m_grid, "--m"),
                    .trials = trials,
                    .seed = seed,
                    .eval_n = eval_n,
                    .learner_config = learner.Resolve()};
    std::stringstream in(learners);
    std::string id;
    while (std::getline(in, id, ',')) cfg.learners.push_back(ParseRegime(id));
    cfg.Validate();
    const int workers = ResolveThreads(threads);
    const auto records = RunSweep(cfg, workers);
    WriteSweepCsv(records, out);
    SaveJsonFile(SweepSummary(records),
                 summary.empty() ? out + ".summary.json" : summary);
    if (!timings.empty()) WriteTimingsCsv(records, timings);
    const auto failed = std::count_if(records.begin(), records.end(),
                                      [](const auto& r) {
                                        return r.status != "ok";
                                      });
    std::cerr << records.size() << " records (" << failed << " failed) on "
              << workers << " thread(s) -> " << out << '\n';
  }
};

// --- plot -------------------------------------------------------------------

struct PlotCmd {
  std::string input;
  std::string out;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    cmd->add_option("--in", input, "Sweep record CSV")->required();
    cmd->add_option("--out", out, "SVG path")->required();
    cmd->callback([this] { Run(); });
  }

  void Run() {
    const auto records = ReadSweepCsv(input);
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error(out + ": cannot open for writing");
    f << RenderSweepSvg(records);
    if (!f) throw Error(out + ": write failed");
    std::cerr << "plotted " << records.size() << " records -> " << out << '\n';
  }
};

// --- ddprobe ----------------------------------------------------------------

struct DdprobeCmd {
  std::string family;
  std::string cor;
  std::string proj;
  int quadruples = 30;
  std::string sizes = "1-5";
  int64_t budget = 1000000;
  uint64_t seed = 0;
  std::string out;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "ddprobe", "Search for comparer-shattered quadruple sets");
    auto* f = cmd->add_option("--family", family, "Family JSON file");
    auto* c = cmd->add_option("--cor", cor, "All coordinate projections: D,K");
    auto* p = cmd->add_option("--proj", proj,
                              "Random linear maps: D,K,count");
    f->excludes(c)->excludes(p);
    c->excludes(p);
    cmd->add_option("--quadruples", quadruples, "Random quadruple pool size");
    cmd->add_option("--sizes", sizes, "Target sizes, e.g. 1-5 or 2,4");
    cmd->add_option("--budget", budget, "Max candidate sets per size");
    cmd->add_option("--seed", seed, "Seed for quadruples and random maps");
    cmd->add_option("--out", out, "Report JSON path (default stdout)");
    cmd->callback([this] { Run(); });
  }

  FeatureFamily ResolveFamily() const {
    if (!family.empty()) return FeatureFamilyFromJson(LoadJsonFile(family));
    if (!cor.empty()) {
      const auto dk = ParseIntList(cor, "--cor");
      if (dk.size() != 2) throw Error("--cor expects D,K");
      return FeatureFamily::FullCor(dk[0], dk[1]);
    }
    if (!proj.empty()) {
      const auto v = ParseIntList(proj, "--proj");
      if (v.size() != 3) throw Error("--proj expects D,K,count");
      return FeatureFamily::RandomProj(v[0], v[1], v[2], SeedSpec{seed, 1});
    }
    throw Error("one of --family, --cor or --proj is required");
  }

  void Run() {
    const FeatureFamily fam = ResolveFamily();
    if (quadruples < 1) throw Error("--quadruples must be positive");
    if (budget < 1) throw Error("--budget must be positive");
    const auto pool = RandomQuadruples(fam.input_dim(), quadruples,
                                       SeedSpec{seed, 0});
    Json rows = Json::array();
    for (int size : ParseSizes(sizes)) {
      if (size < 1 || size > std::min(quadruples, 20)) {
        throw Error("--sizes: " + std::to_string(size) +
                    " is outside [1, min(quadruples, 20)]");
      }
      const ShatterResult r = ShatteringSearch(fam, pool, size, budget);
      Json dich = Json::array();
      for (const auto& d : r.dichotomies) {
        dich.push_back(Json{{"pattern", d.pattern}, {"map_index", d.map_index}});
      }
      rows.push_back(Json{{"size", size},
                          {"verdict", VerdictName(r.verdict)},
                          {"candidate_sets", r.candidate_sets},
                          {"witness", r.witness},
                          {"dichotomies", std::move(dich)}});
      std::cerr << "size " << size << ": " << VerdictName(r.verdict) << '\n';
    }
    Json fam_json = ToJson(fam);
    fam_json.erase("schema_version");
    EmitJson(Json{{"schema_version", kSchemaVersion},
                  {"family", std::move(fam_json)},
                  {"bound", FamilyDistanceDimUpper(fam)},
                  {"quadruples", quadruples},
                  {"seed", seed},
                  {"budget", budget},
                  {"rows", std::move(rows)}},
             out);
  }
};

// --- certify ----------------------------------------------------------------

struct CertifyCmd {
  ProblemOptions problem;
  std::optional<int> map;
  CertifyBudget budget;
  uint64_t seed = 0;
  std::string out;

  void Add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "certify", "Monte-Carlo preserve / contract / unify checks");
    problem.Add(cmd);
    cmd->add_option("--map", map, "Map index (default: every map)");
    cmd->add_option("--source-samples", budget.source_samples);
    cmd->add_option("--target-samples", budget.target_samples);
    cmd->add_option("--margin-tol", budget.margin_tol);
    cmd->add_option("--contract-tol", budget.contract_tol);
    cmd->add_option("--lambda", budget.lambda, "Contraction constant, > 2");
    cmd->add_option("--seed", seed, "Seed");
    cmd->add_option("--out", out, "Report JSON path (default stdout)");
    cmd->callback([this] { Run(); });
  }

  void Run() {
    const ShiftProblem p = problem.Resolve();
    std::vector<int> maps;
    if (map) {
      maps.push_back(*map);
    } else {
      for (int i = 0; i < p.family.size(); ++i) maps.push_back(i);
    }
    Json reports = Json::array();
    for (int i : maps) {
      const CertReport r = Certify(p, i, budget, SeedSpec{seed, 0});
      std::cerr << "map " << i << ": preserves " << VerdictString(r.preserves)
                << ", contracts " << VerdictString(r.contracts)
                << ", unifies " << VerdictString(r.unifies) << '\n';
      Json j = ToJson(r);
      j.erase("schema_version");
      reports.push_back(std::move(j));
    }
    EmitJson(Json{{"schema_version", kSchemaVersion},
                  {"reports", std::move(reports)}},
             out);
  }
};

int Main(int argc, char** argv) {
  CLI::App app{"Feature-map selection under distribution shift"};
  app.require_subcommand(1);
  ScenarioCmd scenario;
  TrainCmd train;
  SweepCmd sweep;
  PlotCmd plot;
  DdprobeCmd ddprobe;
  CertifyCmd certify;
  scenario.Add(app);
  train.Add(app);
  sweep.Add(app);
  plot.Add(app);
  ddprobe.Add(app);
  certify.Add(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e, std::cerr, std::cerr);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace sirm

int main(int argc, char** argv) { return sirm::Main(argc, argv); }
