// Copyright 2026 The evoquery Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace evoquery {

// Platform-stable random stream. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; the standard distributions are not, so
// the draws below are derived from raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Derives an independent stream from a base seed and a path of salts
  // (e.g. generation, genome index). SplitMix64 finalizer per component.
  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> salts);

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform01();

  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // True with probability p; p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p) { return uniform01() < p; }

  // Index drawn with probability proportional to weights[i]. Falls back to a
  // uniform draw when all weights are zero.
  std::size_t weighted_index(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace evoquery
