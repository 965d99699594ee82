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

#ifndef KICKNEXT_SRC_GENERATORS_H_
#define KICKNEXT_SRC_GENERATORS_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "model.h"

namespace kicknext {

enum class Family { kUniform, kPartition, kChain, kRandomTree };
enum class WeightDistribution { kUniform, kExponential, kPowerLaw, kNearTies };

struct GenSpec {
  Family family = Family::kUniform;
  int n = 1;
  std::uint64_t seed = 0;
  WeightDistribution weights = WeightDistribution::kUniform;
  double power_law_exponent = 2.0;
  // uniform: rank. partition: per-part capacity.
  int k = 1;
  int parts = 2;
  int depth = 3;
  // random_tree: node count (0 picks one from the seed) and fan-out limit.
  int nodes = 0;
  int max_branching = 3;
  std::string name;  // empty: derived from the spec
};

// Builds a valid, already-normalized instance, deterministically in the seed.
//   uniform      single root with capacity k (1 <= k <= n)
//   partition    root over `parts` disjoint parts of capacity k each; the
//                root capacity parts * k never binds
//   chain        path of `depth` nodes, capacities strictly increasing
//                towards the root
//   random_tree  sequential parent attachment with bounded fan-out
// Weights: uniform on (0, 1], exponential(1), Pareto with the given exponent
// (scale 1), or near_ties (integers 1..3, so raw ties are common).
// Throws std::invalid_argument on inconsistent parameters.
LaminarInstance Generate(const GenSpec& spec);

// Throw std::invalid_argument on unknown names.
Family ParseFamily(std::string_view name);
WeightDistribution ParseWeightDistribution(std::string_view name);
std::string_view FamilyName(Family family);
std::string_view WeightDistributionName(WeightDistribution weights);

}  // namespace kicknext

#endif  // KICKNEXT_SRC_GENERATORS_H_
