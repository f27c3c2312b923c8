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

// Static SVG rendering of sweep records: median target risk against n, one
// curve per learner, next to stacked map-selection frequencies.

#ifndef SIRM_PLOT_H_
#define SIRM_PLOT_H_

#include <string>
#include <vector>

#include "sirm/sweep.h"

namespace sirm {

// Self-contained SVG document. Output depends only on the records, so equal
// inputs give byte-identical files. Failed records are ignored; with no
// usable record the axes are drawn with a "no data" note.
std::string RenderSweepSvg(const std::vector<SweepRecord>& records);

}  // namespace sirm

#endif  // SIRM_PLOT_H_
