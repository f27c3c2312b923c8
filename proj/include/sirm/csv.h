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

// CSV datasets. Header is x_0,...,x_{D-1},y for labeled files and
// x_0,...,x_{D-1} for unlabeled ones; reals are written with 17 significant
// digits so that a save/load round trip is bit-exact.

#ifndef SIRM_CSV_H_
#define SIRM_CSV_H_

#include <optional>
#include <string>

#include "sirm/core.h"

namespace sirm {

// Loads a labeled file. When label_count is absent it is taken to be one
// more than the largest label seen (at least 1). Malformed rows raise an
// Error naming the 1-based line number.
LabeledSet LoadCsv(const std::string& path,
                   std::optional<int> label_count = std::nullopt);
void SaveCsv(const LabeledSet& s, const std::string& path);

UnlabeledSet LoadUnlabeledCsv(const std::string& path);
void SaveUnlabeledCsv(const UnlabeledSet& s, const std::string& path);

// True when the header's last column is "y".
bool CsvHasLabels(const std::string& path);

// "%.17g" formatting shared by every text output.
std::string FormatReal(double v);

}  // namespace sirm

#endif  // SIRM_CSV_H_
