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

// Seeded multi-trial sweeps over sample sizes, their CSV record format, and
// a per-cell summary.

#ifndef SIRM_SWEEP_H_
#define SIRM_SWEEP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sirm/experiment.h"
#include "sirm/json_io.h"
#include "sirm/learners.h"
#include "sirm/scene.h"

namespace sirm {

struct SweepConfig {
  ShiftProblem problem;
  std::vector<Regime> learners;
  std::vector<int> n_grid;
  std::vector<int> m_grid;  // target sample sizes; ignored by source-only
                            // and oracle, but still one cell per value
  int trials = 1;
  uint64_t seed = 0;
  int eval_n = 10000;
  LearnerConfig learner_config;

  void Validate() const;
};

struct SweepRecord {
  std::string learner;
  int n = 0;
  int m = 0;
  int trial = 0;
  uint64_t seed = 0;
  std::optional<int> chosen_map;     // absent when the trial failed
  std::optional<double> target_risk;
  std::optional<double> source_risk;
  std::string status = "ok";         // "ok" or "error: <message>"
  double wall_seconds = 0.0;         // kept out of the CSV
};

// Trial seed for target-size index m_index and trial t. It ignores n and the
// learner, so within a trial every learner and every n sees the same draws:
// source samples for growing n are nested and the held-out sets coincide.
uint64_t TrialSeed(uint64_t master, int m_index, int trial);

// Records ordered by learner, n, m, trial. A failing trial is recorded with
// its error and the remaining trials still run.
std::vector<SweepRecord> RunSweep(const SweepConfig& cfg, int threads);

inline constexpr const char* kSweepCsvHeader =
    "learner,n,m,trial,seed,chosen_map,target_risk,source_risk,status";

void WriteSweepCsv(const std::vector<SweepRecord>& records,
                   const std::string& path);
std::string SweepCsvText(const std::vector<SweepRecord>& records);
// Throws Error on a header or row that does not follow the schema.
std::vector<SweepRecord> ReadSweepCsv(const std::string& path);
void WriteTimingsCsv(const std::vector<SweepRecord>& records,
                     const std::string& path);

// Per (learner, n, m): trial counts, median and quartiles of the risks, and
// how often each map was chosen.
Json SweepSummary(const std::vector<SweepRecord>& records);

// Linear-interpolation quantile of a non-empty sample, q in [0, 1].
double Quantile(std::vector<double> values, double q);

}  // namespace sirm

#endif  // SIRM_SWEEP_H_
