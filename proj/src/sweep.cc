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

#include "sirm/sweep.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "sirm/csv.h"
#include "sirm/estimators.h"
#include "sirm/parallel.h"

namespace sirm {
namespace {

std::string OneLine(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return s;
}

std::vector<std::string> SplitRow(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void SweepConfig::Validate() const {
  if (learners.empty()) throw Error("sweep: no learners");
  if (n_grid.empty()) throw Error("sweep: empty n grid");
  if (m_grid.empty()) throw Error("sweep: empty m grid");
  if (trials < 1) throw Error("sweep: trials must be at least 1");
  if (eval_n < 1) throw Error("sweep: eval size must be positive");
  for (int n : n_grid) {
    if (n < 1) throw Error("sweep: n must be positive");
  }
  for (int m : m_grid) {
    if (m < 0) throw Error("sweep: m must be non-negative");
  }
  learner_config.Validate();
  ValidateProblem(problem);
}

uint64_t TrialSeed(uint64_t master, int m_index, int trial) {
  return DeriveSeed(master, m_index, trial);
}

std::vector<SweepRecord> RunSweep(const SweepConfig& cfg, int threads) {
  cfg.Validate();
  struct Task {
    Regime learner;
    int ni, mi, trial;
  };
  std::vector<Task> tasks;
  for (Regime r : cfg.learners) {
    for (size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
      for (size_t mi = 0; mi < cfg.m_grid.size(); ++mi) {
        for (int t = 0; t < cfg.trials; ++t) {
          tasks.push_back({r, static_cast<int>(ni), static_cast<int>(mi), t});
        }
      }
    }
  }
  std::vector<SweepRecord> records(tasks.size());
  ParallelFor(static_cast<int>(tasks.size()), threads, [&](int i) {
    const Task& task = tasks[i];
    SweepRecord& rec = records[i];
    rec.learner = RegimeName(task.learner);
    rec.n = cfg.n_grid[task.ni];
    rec.m = cfg.m_grid[task.mi];
    rec.trial = task.trial;
    rec.seed = TrialSeed(cfg.seed, task.mi, task.trial);
    const auto start = std::chrono::steady_clock::now();
    try {
      const TrialData data = GenerateTrialData(cfg.problem, rec.n, rec.m,
                                               cfg.eval_n, rec.seed);
      const LearnerOutput out = RunRegime(task.learner, data.source,
                                          data.target, cfg.problem,
                                          cfg.learner_config);
      rec.chosen_map = out.chosen_map_index;
      rec.target_risk = EmpiricalRisk(out.classifier, data.target_eval).value;
      rec.source_risk = EmpiricalRisk(out.classifier, data.source_eval).value;
    } catch (const std::exception& e) {
      rec.status = "error: " + OneLine(e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  });
  return records;
}

std::string SweepCsvText(const std::vector<SweepRecord>& records) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.learner << ',' << r.n << ',' << r.m << ',' << r.trial << ','
        << r.seed << ',' << (r.chosen_map ? std::to_string(*r.chosen_map) : "")
        << ',' << (r.target_risk ? FormatReal(*r.target_risk) : "") << ','
        << (r.source_risk ? FormatReal(*r.source_risk) : "") << ','
        << r.status << '\n';
  }
  return out.str();
}

void WriteSweepCsv(const std::vector<SweepRecord>& records,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << SweepCsvText(records);
  if (!out) throw Error(path + ": write failed");
}

void WriteTimingsCsv(const std::vector<SweepRecord>& records,
                     const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << "learner,n,m,trial,wall_seconds\n";
  for (const auto& r : records) {
    out << r.learner << ',' << r.n << ',' << r.m << ',' << r.trial << ','
        << FormatReal(r.wall_seconds) << '\n';
  }
}

std::vector<SweepRecord> ReadSweepCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ":1: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSweepCsvHeader) {
    throw Error(path + ":1: header does not match the sweep record schema");
  }
  std::vector<SweepRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    const auto cells = SplitRow(line);
    if (cells.size() != 9) throw Error(where + "expected 9 columns");
    SweepRecord r;
    try {
      size_t pos = 0;
      auto integer = [&](const std::string& s) {
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      };
      auto real = [&](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !(v >= 0.0 && v <= 1.0)) {
          throw std::invalid_argument(s);
        }
        return v;
      };
      r.learner = cells[0];
      r.n = static_cast<int>(integer(cells[1]));
      r.m = static_cast<int>(integer(cells[2]));
      r.trial = static_cast<int>(integer(cells[3]));
      r.seed = std::stoull(cells[4], &pos);
      if (pos != cells[4].size()) throw std::invalid_argument(cells[4]);
      if (!cells[5].empty()) r.chosen_map = static_cast<int>(integer(cells[5]));
      r.target_risk = real(cells[6]);
      r.source_risk = real(cells[7]);
      r.status = cells[8];
    } catch (const std::logic_error&) {
      throw Error(where + "malformed record");
    }
    if (r.learner.empty()) throw Error(where + "empty learner");
    records.push_back(std::move(r));
  }
  return records;
}

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * (values.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

Json SweepSummary(const std::vector<SweepRecord>& records) {
  using Key = std::tuple<std::string, int, int>;
  std::map<Key, std::vector<const SweepRecord*>> cells;
  for (const auto& r : records) cells[{r.learner, r.n, r.m}].push_back(&r);
  Json out = Json::array();
  for (const auto& [key, recs] : cells) {
    std::vector<double> target, source;
    std::map<int, int> chosen;
    int failed = 0;
    for (const SweepRecord* r : recs) {
      if (r->status != "ok") {
        ++failed;
        continue;
      }
      if (r->target_risk) target.push_back(*r->target_risk);
      if (r->source_risk) source.push_back(*r->source_risk);
      if (r->chosen_map) ++chosen[*r->chosen_map];
    }
    auto stats = [](const std::vector<double>& v) -> Json {
      if (v.empty()) return nullptr;
      return Json{{"q25", Quantile(v, 0.25)},
                  {"median", Quantile(v, 0.5)},
                  {"q75", Quantile(v, 0.75)}};
    };
    Json freq = Json::object();
    for (const auto& [map, count] : chosen) {
      freq[std::to_string(map)] = static_cast<double>(count) / recs.size();
    }
    out.push_back(Json{{"learner", std::get<0>(key)},
                       {"n", std::get<1>(key)},
                       {"m", std::get<2>(key)},
                       {"trials", recs.size()},
                       {"failed", failed},
                       {"target_risk", stats(target)},
                       {"source_risk", stats(source)},
                       {"selection_frequency", std::move(freq)}});
  }
  return Json{{"schema_version", kSchemaVersion}, {"cells", std::move(out)}};
}

}  // namespace sirm
