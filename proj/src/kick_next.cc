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

#include "kick_next.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "random.h"

namespace kicknext {

namespace {

// True iff some member of `ref` is lighter than real element e.
bool HasElementBelow(const LaminarInstance& instance, const RankedOptimum& ref,
                     std::size_t e) {
  if (!ref.padding.empty()) return true;
  return !ref.elements.empty() && instance.Precedes(e, ref.elements.front());
}

// Removes the heaviest member of `ref` lighter than e. Requires
// HasElementBelow(ref, e).
Element EvictLargestBelow(const LaminarInstance& instance, RankedOptimum& ref,
                          std::size_t e) {
  auto end = std::partition_point(
      ref.elements.begin(), ref.elements.end(),
      [&](std::size_t x) { return instance.Precedes(e, x); });
  if (end != ref.elements.begin()) {
    auto victim = std::prev(end);
    Element evicted = instance.element(*victim);
    ref.elements.erase(victim);
    return evicted;
  }
  Element evicted = ref.padding.back();
  ref.padding.pop_back();
  return evicted;
}

}  // namespace

Trial MakeTrial(const LaminarInstance& instance, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("selection probability p must lie in (0, 1)");
  }
  Rng rng(seed);
  Trial trial;
  trial.seed = seed;
  trial.p = p;
  trial.sample.assign(instance.num_elements(), false);
  for (std::size_t e = 0; e < instance.num_elements(); ++e) {
    if (rng.Bernoulli(1.0 - p)) {
      trial.sample[e] = true;
    } else {
      trial.arrival_order.push_back(e);
    }
  }
  rng.Shuffle(trial.arrival_order);
  return trial;
}

double RunResult::Weight(const LaminarInstance& instance) const {
  double total = 0.0;
  for (std::size_t e : selected) total += instance.weight(e);
  return total;
}

RunResult RunKickNext(const LaminarInstance& instance, const Trial& trial,
                      const RunConfig& config) {
  return RunSelection(instance,
                      AllReferenceSets(instance, trial.sample, config.padding),
                      trial.arrival_order, config);
}

RunResult RunSelection(const LaminarInstance& instance,
                       std::vector<RankedOptimum> reference_sets,
                       std::span<const std::size_t> arrival_order,
                       const RunConfig& config) {
  RunResult result;
  result.sol_per_node.resize(instance.num_nodes());
  result.initial_reference_sets = reference_sets;
  std::vector<RankedOptimum>& refs = reference_sets;
  const std::size_t root = instance.root();

  result.arrivals.reserve(arrival_order.size());
  for (std::size_t step = 0; step < arrival_order.size(); ++step) {
    const std::size_t e = arrival_order[step];
    ArrivalRecord record;
    record.element = e;
    for (std::size_t b = instance.minimal_node(e); b != kNoNode; b = instance.parent(b)) {
      if (!HasElementBelow(instance, refs[b], e)) record.allkicked_nodes.push_back(b);
    }

    // Acceptances at inner nodes stand even if an outer node breaks.
    for (std::size_t b = instance.minimal_node(e); b != kNoNode; b = instance.parent(b)) {
      if (!HasElementBelow(instance, refs[b], e)) {
        record.break_node = b;
        if (config.trace) {
          result.events.push_back({step, e, b, Action::kBreak, std::nullopt});
        }
        break;
      }
      result.sol_per_node[b].push_back(e);
      Element evicted = EvictLargestBelow(instance, refs[b], e);
      if (config.trace) {
        result.events.push_back({step, e, b, Action::kAccept, evicted});
      }
      if (b == root) result.selected.push_back(e);
    }
    result.arrivals.push_back(std::move(record));
  }
  result.final_reference_sets = std::move(reference_sets);
  return result;
}

bool Qualifies(const LaminarInstance& instance, std::size_t element,
               std::size_t node, std::span<const RankedOptimum> reference_sets) {
  for (std::size_t b : Chain(instance, instance.minimal_node(element), node)) {
    if (!HasElementBelow(instance, reference_sets[b], element)) return false;
  }
  return true;
}

std::string TraceCsv(const LaminarInstance& instance, const RunResult& result) {
  std::ostringstream out;
  out << "step,element_id,node_id,action,evicted_id,evicted_virtual\n";
  for (const TraceEvent& event : result.events) {
    out << event.step << ',' << instance.element(event.element).id << ','
        << instance.node(event.node).id << ','
        << (event.action == Action::kAccept ? "accept" : "break") << ',';
    if (event.evicted) {
      out << event.evicted->id << ',' << (event.evicted->is_virtual ? 1 : 0);
    } else {
      out << ",0";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace kicknext
