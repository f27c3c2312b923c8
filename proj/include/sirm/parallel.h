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

#ifndef SIRM_PARALLEL_H_
#define SIRM_PARALLEL_H_

#include <functional>

namespace sirm {

// Worker count: the hardware concurrency (at least 1), capped by SIRM_THREADS
// when that is set to a positive integer.
int DefaultThreadCount();

// Calls fn(i) for every i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write results into index-addressed slots so
// output never depends on scheduling. Exceptions from fn are rethrown on the
// calling thread (the one with the lowest index wins).
void ParallelFor(int n, int threads, const std::function<void(int)>& fn);

}  // namespace sirm

#endif  // SIRM_PARALLEL_H_
