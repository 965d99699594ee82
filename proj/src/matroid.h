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

#ifndef KICKNEXT_SRC_MATROID_H_
#define KICKNEXT_SRC_MATROID_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "model.h"

namespace kicknext {

// Membership mask over element indices.
using Subset = std::vector<bool>;

inline Subset FullSubset(const LaminarInstance& instance) {
  return Subset(instance.num_elements(), true);
}
inline Subset EmptySubset(const LaminarInstance& instance) {
  return Subset(instance.num_elements(), false);
}

// Maximum-weight independent subset of V ∩ B under the restriction of the
// matroid to B's subtree, sorted lightest first. With padding, `padding`
// holds the weight-0 virtual elements that fill the set up to μ(B); they sit
// below every real element and are themselves listed lightest first.
struct RankedOptimum {
  std::size_t node = kNoNode;
  std::vector<std::size_t> elements;  // real element indices, ascending
  std::vector<Element> padding;       // virtual elements, ascending

  std::size_t size() const { return elements.size() + padding.size(); }
  bool empty() const { return size() == 0; }
  double Weight(const LaminarInstance& instance) const;
  bool Contains(std::size_t e) const;
  // Number of members strictly lighter than real element `e`.
  int CountBelow(const LaminarInstance& instance, std::size_t e) const;
};

// |X ∩ B| ≤ μ(B) for every node B. Throws std::out_of_range on an index
// outside the instance; repeated indices count once.
bool IsIndependent(const LaminarInstance& instance,
                   std::span<const std::size_t> elements);

// Matroid greedy over V ∩ B in weight order.
RankedOptimum GreedyOpt(const LaminarInstance& instance, const Subset& subset,
                        std::size_t node, bool padding = false);

// R(B) = GreedyOpt(S, B) for every node B, indexed by node.
std::vector<RankedOptimum> AllReferenceSets(const LaminarInstance& instance,
                                            const Subset& sample, bool padding);

// brank(i, B) against OPT_V(B): members strictly lighter than i. Padding
// elements count as lighter than every real element. Throws InstanceError if
// i is not a member of B.
int BackwardRank(const LaminarInstance& instance, std::size_t element,
                 std::size_t node, const Subset& subset, bool padding = true);

inline constexpr std::size_t kBruteForceLimit = 20;

// Exhaustive search over all subsets of V ∩ B; test oracle for GreedyOpt.
// Throws std::length_error if |V ∩ B| exceeds kBruteForceLimit.
RankedOptimum BruteForceOpt(const LaminarInstance& instance, const Subset& subset,
                            std::size_t node);

// `count` padding elements of node `b`, ascending in weight order.
std::vector<Element> MakePadding(const LaminarInstance& instance, std::size_t b,
                                 int count);

}  // namespace kicknext

#endif  // KICKNEXT_SRC_MATROID_H_
