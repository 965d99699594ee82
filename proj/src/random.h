// Copyright 2026 The Authors.
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

#ifndef KICKNEXT_SRC_RANDOM_H_
#define KICKNEXT_SRC_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace kicknext {

// SplitMix64 finalizer.
std::uint64_t SplitMix64(std::uint64_t x);

// Seed of trial `index` under `master_seed`: the (index + 1)-th output of a
// SplitMix64 stream whose state starts at `master_seed`. Trials are therefore
// addressable individually, and serial and parallel runs see the same seeds.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t index);

// Reproducible random source. Only the raw mt19937_64 stream (whose output
// is fixed by the standard) is used; every derived draw is computed here so
// results do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1].
  double UniformPositive() { return 1.0 - Uniform(); }

  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t Below(std::uint64_t bound);

  bool Bernoulli(double probability) { return Uniform() < probability; }

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kicknext

#endif  // KICKNEXT_SRC_RANDOM_H_
