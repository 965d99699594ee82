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

#ifndef KICKNEXT_SRC_KICK_NEXT_H_
#define KICKNEXT_SRC_KICK_NEXT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matroid.h"
#include "model.h"

namespace kicknext {

// One realization of the algorithm's randomness: the sample/selection split
// and the arrival order of the selection phase.
struct Trial {
  std::uint64_t seed = 0;
  double p = 0.0;
  Subset sample;                          // S
  std::vector<std::size_t> arrival_order; // permutation of T = U - S
};

// Each element joins S independently with probability 1 - p and T is put in
// uniformly random order. This has the same law, on everything the algorithm
// observes, as drawing t ~ Binom(n, 1 - p) and taking the first t elements
// of a uniform permutation as S. Throws std::invalid_argument unless
// 0 < p < 1.
Trial MakeTrial(const LaminarInstance& instance, double p, std::uint64_t seed);

struct RunConfig {
  bool padding = true;
  bool trace = false;
};

enum class Action { kAccept, kBreak };

struct TraceEvent {
  std::size_t step = 0;     // position in the arrival order
  std::size_t element = 0;  // arriving element
  std::size_t node = 0;
  Action action = Action::kBreak;
  std::optional<Element> evicted;  // set on accept
};

// Per arrival: where the chain loop stopped (if it did), and every node of
// F(i) at which, on arrival, no reference element lighter than i remained
// (the AllKicked(i, B) event).
struct ArrivalRecord {
  std::size_t element = 0;
  std::optional<std::size_t> break_node;
  std::vector<std::size_t> allkicked_nodes;
};

struct RunResult {
  std::vector<std::size_t> selected;                 // SOL(U)
  std::vector<std::vector<std::size_t>> sol_per_node;
  std::vector<RankedOptimum> initial_reference_sets;
  std::vector<RankedOptimum> final_reference_sets;
  std::vector<TraceEvent> events;                    // only with config.trace
  std::vector<ArrivalRecord> arrivals;

  double Weight(const LaminarInstance& instance) const;
};

RunResult RunKickNext(const LaminarInstance& instance, const Trial& trial,
                      const RunConfig& config = {});

// Selection phase only, from precomputed reference sets. Lets enumeration
// reuse one set of R(B) across every arrival order of the same sample.
RunResult RunSelection(const LaminarInstance& instance,
                       std::vector<RankedOptimum> reference_sets,
                       std::span<const std::size_t> arrival_order,
                       const RunConfig& config = {});

// x qualifies for B iff, for every B' in Chain[M(x), B], the lightest member
// of the reference set R(B') is lighter than x. Throws InstanceError if x is
// not a member of B.
bool Qualifies(const LaminarInstance& instance, std::size_t element,
               std::size_t node, std::span<const RankedOptimum> reference_sets);

// CSV: step,element_id,node_id,action,evicted_id,evicted_virtual
std::string TraceCsv(const LaminarInstance& instance, const RunResult& result);

}  // namespace kicknext

#endif  // KICKNEXT_SRC_KICK_NEXT_H_
