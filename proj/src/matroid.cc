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

#include "matroid.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kicknext {

double RankedOptimum::Weight(const LaminarInstance& instance) const {
  double total = 0.0;
  for (std::size_t e : elements) total += instance.weight(e);
  return total;
}

bool RankedOptimum::Contains(std::size_t e) const {
  return std::find(elements.begin(), elements.end(), e) != elements.end();
}

int RankedOptimum::CountBelow(const LaminarInstance& instance, std::size_t e) const {
  // `elements` is ascending, so the members lighter than e form a prefix.
  auto end = std::partition_point(
      elements.begin(), elements.end(),
      [&](std::size_t x) { return instance.Precedes(e, x); });
  return static_cast<int>((end - elements.begin()) + padding.size());
}

bool IsIndependent(const LaminarInstance& instance,
                   std::span<const std::size_t> elements) {
  std::vector<bool> seen(instance.num_elements(), false);
  std::vector<int> usage(instance.num_nodes(), 0);
  for (std::size_t e : elements) {
    if (e >= instance.num_elements()) {
      throw std::out_of_range("element index out of range");
    }
    if (seen[e]) continue;
    seen[e] = true;
    for (std::size_t b = instance.minimal_node(e); b != kNoNode; b = instance.parent(b)) {
      if (++usage[b] > instance.capacity(b)) return false;
    }
  }
  return true;
}

std::vector<Element> MakePadding(const LaminarInstance& instance, std::size_t b,
                                 int count) {
  std::vector<Element> padding;
  padding.reserve(count);
  for (int slot = count - 1; slot >= 0; --slot) {
    padding.push_back({instance.VirtualId(b, slot), 0.0, true});
  }
  return padding;
}

RankedOptimum GreedyOpt(const LaminarInstance& instance, const Subset& subset,
                        std::size_t node, bool padding) {
  if (node >= instance.num_nodes()) throw InstanceError("unknown node index");
  RankedOptimum opt;
  opt.node = node;
  std::vector<int> usage(instance.num_nodes(), 0);
  for (std::size_t e : instance.by_weight()) {
    if (!subset[e] || !instance.Contains(node, e)) continue;
    bool fits = true;
    for (std::size_t b = instance.minimal_node(e);; b = instance.parent(b)) {
      if (usage[b] >= instance.capacity(b)) {
        fits = false;
        break;
      }
      if (b == node) break;
    }
    if (!fits) continue;
    for (std::size_t b = instance.minimal_node(e);; b = instance.parent(b)) {
      ++usage[b];
      if (b == node) break;
    }
    opt.elements.push_back(e);
  }
  std::reverse(opt.elements.begin(), opt.elements.end());
  if (padding) {
    opt.padding = MakePadding(instance, node,
                              instance.capacity(node) -
                                  static_cast<int>(opt.elements.size()));
  }
  return opt;
}

std::vector<RankedOptimum> AllReferenceSets(const LaminarInstance& instance,
                                            const Subset& sample, bool padding) {
  std::vector<RankedOptimum> sets;
  sets.reserve(instance.num_nodes());
  for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
    sets.push_back(GreedyOpt(instance, sample, b, padding));
  }
  return sets;
}

int BackwardRank(const LaminarInstance& instance, std::size_t element,
                 std::size_t node, const Subset& subset, bool padding) {
  if (element >= instance.num_elements() || node >= instance.num_nodes() ||
      !instance.Contains(node, element)) {
    throw InstanceError("backward rank: element is not a member of the node");
  }
  return GreedyOpt(instance, subset, node, padding).CountBelow(instance, element);
}

RankedOptimum BruteForceOpt(const LaminarInstance& instance, const Subset& subset,
                            std::size_t node) {
  if (node >= instance.num_nodes()) throw InstanceError("unknown node index");
  std::vector<std::size_t> candidates;
  for (std::size_t e : instance.by_weight()) {
    if (subset[e] && instance.Contains(node, e)) candidates.push_back(e);
  }
  const std::size_t k = candidates.size();
  if (k > kBruteForceLimit) {
    throw std::length_error("brute force: subset exceeds the size guard");
  }

  // Candidate j maps to bit (k - 1 - j), so among equal-weight sets the
  // numerically larger mask holds the heavier elements in weight order.
  std::uint64_t best_mask = 0;
  double best_weight = 0.0;
  std::vector<int> usage(instance.num_nodes());
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::fill(usage.begin(), usage.end(), 0);
    bool independent = true;
    double weight = 0.0;
    for (std::size_t j = 0; j < k && independent; ++j) {
      if (!(mask >> (k - 1 - j) & 1)) continue;
      std::size_t e = candidates[j];
      weight += instance.weight(e);
      for (std::size_t b = instance.minimal_node(e);; b = instance.parent(b)) {
        if (++usage[b] > instance.capacity(b)) independent = false;
        if (b == node) break;
      }
    }
    if (!independent) continue;
    const double tolerance = 1e-12 * std::max(1.0, std::abs(best_weight));
    if (weight > best_weight + tolerance ||
        (std::abs(weight - best_weight) <= tolerance && mask > best_mask)) {
      best_weight = weight;
      best_mask = mask;
    }
  }

  RankedOptimum opt;
  opt.node = node;
  for (std::size_t j = k; j-- > 0;) {
    if (best_mask >> (k - 1 - j) & 1) opt.elements.push_back(candidates[j]);
  }
  return opt;
}

}  // namespace kicknext
