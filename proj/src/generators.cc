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

#include "generators.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "random.h"

namespace kicknext {

namespace {

double DrawWeight(const GenSpec& spec, Rng& rng) {
  switch (spec.weights) {
    case WeightDistribution::kUniform:
      return rng.UniformPositive();
    case WeightDistribution::kExponential:
      // UniformPositive() is in (0, 1], so the log is finite; the max keeps
      // weights strictly positive when it returns exactly 1.
      return std::max(-std::log(rng.UniformPositive()), 1e-12);
    case WeightDistribution::kPowerLaw:
      return std::pow(rng.UniformPositive(), -1.0 / spec.power_law_exponent);
    case WeightDistribution::kNearTies:
      return 1.0 + static_cast<double>(rng.Below(3));
  }
  throw std::invalid_argument("unknown weight distribution");
}

std::string DefaultName(const GenSpec& spec) {
  std::ostringstream out;
  out << FamilyName(spec.family) << "-n" << spec.n << "-"
      << WeightDistributionName(spec.weights) << "-s" << spec.seed;
  return out.str();
}

}  // namespace

LaminarInstance Generate(const GenSpec& spec) {
  if (spec.n < 1) throw std::invalid_argument("generator needs n >= 1");
  if (spec.weights == WeightDistribution::kPowerLaw && !(spec.power_law_exponent > 0.0)) {
    throw std::invalid_argument("power-law exponent must be positive");
  }
  Rng rng(spec.seed);
  const int n = spec.n;

  std::vector<NodeSpec> nodes;
  std::vector<std::int64_t> attach(n);  // node id per element

  switch (spec.family) {
    case Family::kUniform: {
      if (spec.k < 1 || spec.k > n) throw std::invalid_argument("uniform needs 1 <= k <= n");
      nodes.push_back({0, spec.k, std::nullopt});
      std::fill(attach.begin(), attach.end(), 0);
      break;
    }
    case Family::kPartition: {
      if (spec.parts < 2 || spec.parts > n) {
        throw std::invalid_argument("partition needs 2 <= parts <= n");
      }
      if (spec.k < 1) throw std::invalid_argument("partition needs per-part capacity k >= 1");
      nodes.push_back({0, static_cast<std::int64_t>(spec.parts) * spec.k, std::nullopt});
      for (int j = 1; j <= spec.parts; ++j) nodes.push_back({j, spec.k, 0});
      for (int i = 0; i < n; ++i) {
        attach[i] = i < spec.parts ? i + 1 : 1 + static_cast<std::int64_t>(rng.Below(spec.parts));
      }
      break;
    }
    case Family::kChain: {
      if (spec.depth < 1) throw std::invalid_argument("chain needs depth >= 1");
      std::vector<std::int64_t> capacity(spec.depth);
      capacity[spec.depth - 1] = 1 + static_cast<std::int64_t>(rng.Below(2));
      for (int j = spec.depth - 2; j >= 0; --j) {
        capacity[j] = capacity[j + 1] + 1 + static_cast<std::int64_t>(rng.Below(2));
      }
      for (int j = 0; j < spec.depth; ++j) {
        std::optional<std::int64_t> parent;
        if (j > 0) parent = j - 1;
        nodes.push_back({j, capacity[j], parent});
      }
      for (int i = 0; i < n; ++i) attach[i] = static_cast<std::int64_t>(rng.Below(spec.depth));
      break;
    }
    case Family::kRandomTree: {
      if (spec.max_branching < 1) throw std::invalid_argument("random_tree needs branching >= 1");
      if (spec.nodes < 0) throw std::invalid_argument("random_tree needs nodes >= 0");
      const int count = spec.nodes > 0
                            ? spec.nodes
                            : 1 + static_cast<int>(rng.Below(std::max(1, n / 2)));
      std::vector<int> parent(count, -1);
      std::vector<std::vector<int>> children(count);
      for (int j = 1; j < count; ++j) {
        std::vector<int> open;
        for (int q = 0; q < j; ++q) {
          if (static_cast<int>(children[q].size()) < spec.max_branching) open.push_back(q);
        }
        parent[j] = open[rng.Below(open.size())];
        children[parent[j]].push_back(j);
      }
      // Parents precede children, so a reverse sweep sees children first.
      std::vector<std::int64_t> capacity(count);
      for (int j = count - 1; j >= 0; --j) {
        if (children[j].empty()) {
          capacity[j] = 1 + static_cast<std::int64_t>(rng.Below(3));
          continue;
        }
        std::int64_t largest = 0, sum = 0;
        for (int c : children[j]) {
          largest = std::max(largest, capacity[c]);
          sum += capacity[c];
        }
        const std::int64_t low = largest + 1;
        const std::int64_t high = std::max(low, sum);
        capacity[j] = low + static_cast<std::int64_t>(rng.Below(high - low + 1));
      }
      for (int j = 0; j < count; ++j) {
        std::optional<std::int64_t> p;
        if (parent[j] >= 0) p = parent[j];
        nodes.push_back({j, capacity[j], p});
      }
      for (int i = 0; i < n; ++i) attach[i] = static_cast<std::int64_t>(rng.Below(count));
      break;
    }
  }

  std::vector<Element> elements;
  std::map<std::int64_t, std::int64_t> membership;
  for (int i = 0; i < n; ++i) {
    elements.push_back({i, DrawWeight(spec, rng), false});
    membership[i] = attach[i];
  }
  return LaminarInstance(spec.name.empty() ? DefaultName(spec) : spec.name,
                         std::move(elements), std::move(nodes), membership);
}

Family ParseFamily(std::string_view name) {
  if (name == "uniform") return Family::kUniform;
  if (name == "partition") return Family::kPartition;
  if (name == "chain") return Family::kChain;
  if (name == "random_tree") return Family::kRandomTree;
  throw std::invalid_argument("unknown family: " + std::string(name));
}

WeightDistribution ParseWeightDistribution(std::string_view name) {
  if (name == "uniform") return WeightDistribution::kUniform;
  if (name == "exponential") return WeightDistribution::kExponential;
  if (name == "power_law") return WeightDistribution::kPowerLaw;
  if (name == "near_ties") return WeightDistribution::kNearTies;
  throw std::invalid_argument("unknown weight distribution: " + std::string(name));
}

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kUniform: return "uniform";
    case Family::kPartition: return "partition";
    case Family::kChain: return "chain";
    case Family::kRandomTree: return "random_tree";
  }
  return "unknown";
}

std::string_view WeightDistributionName(WeightDistribution weights) {
  switch (weights) {
    case WeightDistribution::kUniform: return "uniform";
    case WeightDistribution::kExponential: return "exponential";
    case WeightDistribution::kPowerLaw: return "power_law";
    case WeightDistribution::kNearTies: return "near_ties";
  }
  return "unknown";
}

}  // namespace kicknext
