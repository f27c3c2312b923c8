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

// Seeded random streams. All randomness in the library flows through a
// SeedSpec; there is no global generator.

#ifndef SIRM_RANDOM_H_
#define SIRM_RANDOM_H_

#include <cstdint>
#include <random>

namespace sirm {

struct SeedSpec {
  uint64_t master_seed = 0;
  uint64_t stream_id = 0;
};

// SplitMix64 finalizer.
uint64_t MixSeed(uint64_t x);

// Order-sensitive hash of a master seed and two integers, used to derive
// per-(cell, trial) seeds.
uint64_t DeriveSeed(uint64_t master_seed, uint64_t a, uint64_t b);

// Thin wrapper over mt19937_64. The conversions to doubles are written out
// here rather than taken from <random> distributions, whose outputs differ
// between standard library implementations.
class Rng {
 public:
  explicit Rng(SeedSpec seed);

  uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform on {0, ..., n - 1}; n must be positive.
  uint64_t UniformInt(uint64_t n);
  // Standard normal via Box-Muller; consumes two uniforms per call.
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace sirm

#endif  // SIRM_RANDOM_H_
