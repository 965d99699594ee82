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

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.h"
#include "generators.h"
#include "kick_next.h"
#include "matroid.h"
#include "model.h"
#include "random.h"
#include "test_util.h"
#include "theory.h"

namespace kicknext {
namespace {

using ::kicknext::testing::MixedInstance;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Criterion(int number, const char* title, double time_limit_s,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome = body();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds < time_limit_s;
  const bool pass = outcome.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", number,
              title, outcome.detail.c_str(), seconds, time_limit_s);
  std::fflush(stdout);
}

// Enumerable instances over every generator family and weight distribution.
std::vector<LaminarInstance> SmallInstances(int count, int max_n) {
  std::vector<LaminarInstance> instances;
  for (int s = 0; s < count; ++s) {
    const int n = 2 + s % (max_n - 1);
    instances.push_back(MixedInstance(static_cast<std::uint64_t>(1000 + s), n));
  }
  return instances;
}

Outcome TheoryReproduction() {
  const double ratio = RatioLowerBound(0.08);
  std::ostringstream out;
  out.precision(10);
  out << "ratio_lower_bound(0.08)=" << ratio;
  return {std::abs(ratio - 0.0536) <= 0.0005 && ratio >= 0.053, out.str()};
}

Outcome GridMaximizer() {
  const BestP best = FindBestP(0.001);
  std::ostringstream out;
  out << "best p=" << best.p << " ratio=" << best.ratio;
  return {best.p >= 0.07 && best.p <= 0.09, out.str()};
}

Outcome OracleEquivalence() {
  std::size_t comparisons = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const LaminarInstance instance = MixedInstance(seed, 1 + static_cast<int>(seed % 12));
    Rng rng(SplitMix64(seed));
    for (int s = 0; s < 20; ++s) {
      Subset subset(instance.num_elements());
      for (std::size_t e = 0; e < subset.size(); ++e) subset[e] = rng.Bernoulli(0.6);
      for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
        ++comparisons;
        const RankedOptimum greedy = GreedyOpt(instance, subset, b);
        const RankedOptimum brute = BruteForceOpt(instance, subset, b);
        if (greedy.elements != brute.elements ||
            std::abs(greedy.Weight(instance) - brute.Weight(instance)) > 1e-9) {
          ++mismatches;
        }
      }
    }
  }
  std::ostringstream out;
  out << comparisons << " comparisons, " << mismatches << " mismatches";
  return {mismatches == 0, out.str()};
}

// Replays the trace and reports whether every eviction removed the largest
// reference element below the arrival, and every break had none.
bool EvictionsCorrect(const LaminarInstance& instance, const RunResult& run) {
  std::vector<std::vector<Element>> live(instance.num_nodes());
  for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
    for (const Element& v : run.initial_reference_sets[b].padding) live[b].push_back(v);
    for (std::size_t e : run.initial_reference_sets[b].elements) {
      live[b].push_back(instance.element(e));
    }
  }
  const WeightOrder before;
  for (const TraceEvent& event : run.events) {
    const Element& arriving = instance.element(event.element);
    std::vector<Element>& pool = live[event.node];
    std::size_t best = pool.size();
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (before(arriving, pool[j]) && (best == pool.size() || before(pool[j], pool[best]))) {
        best = j;
      }
    }
    if (event.action == Action::kBreak) {
      if (best != pool.size()) return false;
      continue;
    }
    if (best == pool.size() || !event.evicted || event.evicted->id != pool[best].id ||
        event.evicted->is_virtual != pool[best].is_virtual) {
      return false;
    }
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return true;
}

Outcome FeasibilitySuite() {
  std::size_t trials = 0, infeasible = 0, bad_evictions = 0, not_conserved = 0;
  const Family families[] = {Family::kUniform, Family::kPartition, Family::kChain,
                             Family::kRandomTree};
  const double ps[] = {0.05, 0.08, 0.2, 0.5};
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GenSpec spec;
    spec.family = families[seed % 4];
    spec.weights = static_cast<WeightDistribution>(seed / 4 % 4);
    spec.n = 2 + static_cast<int>(seed % 15);
    spec.seed = seed;
    spec.k = 1 + static_cast<int>(seed % spec.n);
    if (spec.family == Family::kPartition) {
      spec.parts = 2 + static_cast<int>(seed % (spec.n - 1));
      spec.k = 1 + static_cast<int>(seed % 3);
    }
    spec.depth = 1 + static_cast<int>(seed % 5);
    const LaminarInstance instance = Generate(spec);
    for (int t = 0; t < 250; ++t) {
      const double p = ps[t % 4];
      const Trial trial = MakeTrial(instance, p, TrialSeed(seed, t));
      const RunResult run = RunKickNext(instance, trial, {t % 8 != 7, true});
      ++trials;
      if (!IsIndependent(instance, run.selected)) ++infeasible;
      if (!EvictionsCorrect(instance, run)) ++bad_evictions;
      for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
        if (run.initial_reference_sets[b].size() !=
                run.final_reference_sets[b].size() + run.sol_per_node[b].size() ||
            run.sol_per_node[b].size() > static_cast<std::size_t>(instance.capacity(b))) {
          ++not_conserved;
          break;
        }
      }
    }
  }
  std::ostringstream out;
  out << trials << " traced trials, " << infeasible << " infeasible, " << bad_evictions
      << " wrong evictions, " << not_conserved << " conservation violations";
  return {trials >= 100000 && infeasible == 0 && bad_evictions == 0 && not_conserved == 0,
          out.str()};
}

Outcome TheoremExact(const std::vector<LaminarInstance>& instances) {
  const double bound = RatioLowerBound(0.08);
  std::size_t violations = 0;
  double worst = INFINITY;
  for (const LaminarInstance& instance : instances) {
    const double ratio = ExactRatio(instance, 0.08).ratio;
    worst = std::min(worst, ratio);
    if (ratio < bound - 1e-9) ++violations;
  }
  std::ostringstream out;
  out.precision(6);
  out << instances.size() << " instances, min exact ratio " << worst << " vs bound " << bound
      << ", " << violations << " violations";
  return {instances.size() >= 20 && violations == 0, out.str()};
}

Outcome MonteCarloVsExact(const std::vector<LaminarInstance>& instances) {
  std::size_t outside = 0, comparisons = 0;
  double worst_z = 0.0;
  for (double p : {0.05, 0.08, 0.2}) {
    for (std::size_t j = 0; j < instances.size(); ++j) {
      const double exact = ExactRatio(instances[j], p).ratio;
      const RatioEstimate estimate = MonteCarloRatio(instances[j], p, 100000, 77 + j);
      ++comparisons;
      const double gap = std::abs(estimate.mean - exact);
      if (estimate.std_err > 0) worst_z = std::max(worst_z, gap / estimate.std_err);
      if (gap > 4 * estimate.std_err + 1e-12) ++outside;
    }
  }
  std::ostringstream out;
  out.precision(3);
  out << comparisons << " comparisons at 1e5 trials, max |z| " << worst_z << ", " << outside
      << " outside 4 SE";
  return {outside == 0, out.str()};
}

Outcome LemmaSuites() {
  std::size_t g_violations = 0, weighted_violations = 0, telescoping_violations = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const LaminarInstance instance = MixedInstance(seed, 1 + static_cast<int>(seed % 16));
    const auto optima = AllReferenceSets(instance, FullSubset(instance), true);
    const double opt = optima[instance.root()].Weight(instance);
    for (double c : {0.1, 0.2944, 0.49}) {
      for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
        const int k = static_cast<int>(instance.capacity(b));
        for (int m = 0; m <= static_cast<int>(optima[b].elements.size()); ++m) {
          const double g = GExact(instance, optima, m, b, c);
          const double refined = GRefinedBound(m, k, c);
          if (g > refined + 1e-12 || refined > GWeakBound(m, c) + 1e-12) ++g_violations;
        }
      }
      const double penalty = WeightedPenalty(instance, c);
      if (penalty > 2 * c / (1 - c) * opt + 1e-12) ++weighted_violations;
      const double telescoped = TelescopedPenalty(instance, c);
      if (std::abs(telescoped - penalty) > 1e-9 * std::max(std::abs(penalty), 1e-300)) {
        ++telescoping_violations;
      }
    }
  }
  std::ostringstream out;
  out << "500 instances x 3 values of c: " << g_violations << " g-lemma, "
      << weighted_violations << " weighted-lemma, " << telescoping_violations
      << " telescoping violations";
  return {g_violations + weighted_violations + telescoping_violations == 0, out.str()};
}

Outcome ProbabilisticLemmas(const std::vector<LaminarInstance>& small) {
  std::size_t rows = 0, kicked_violations = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LaminarInstance instance = MixedInstance(2000 + seed, 4 + static_cast<int>(seed % 9));
    for (const AllKickedRow& row : AllKickedFrequency(instance, 0.08, 50000, seed)) {
      ++rows;
      if (row.frequency > row.bound + 4 * row.std_err + 1e-12) ++kicked_violations;
    }
  }
  std::size_t laws = 0, count_violations = 0;
  for (const LaminarInstance& instance : small) {
    for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
      for (std::size_t i = 0; i < instance.num_elements(); ++i) {
        for (const auto& [counts, probability] :
             QualifyingCountDistribution(instance, 0.08, b, i)) {
          ++laws;
          const int total = std::accumulate(counts.begin(), counts.end(), 0);
          if (probability > std::pow(0.08, total) + 1e-12) ++count_violations;
        }
      }
    }
  }
  std::ostringstream out;
  out << rows << " AllKicked rows, " << kicked_violations << " above bound + 4 SE; " << laws
      << " exact count probabilities, " << count_violations << " above p^sum";
  return {kicked_violations == 0 && count_violations == 0, out.str()};
}

int Main() {
  const std::vector<LaminarInstance> small = SmallInstances(24, 7);
  std::vector<LaminarInstance> up_to_eight = small;
  for (int s = 0; s < 8; ++s) up_to_eight.push_back(MixedInstance(3000 + s, 8));

  Criterion(1, "theory reproduction", 1, TheoryReproduction);
  Criterion(2, "grid maximizer", 1, GridMaximizer);
  Criterion(3, "oracle equivalence", 30, OracleEquivalence);
  Criterion(4, "feasibility suite", 60, FeasibilitySuite);
  Criterion(5, "theorem lower bound, exact", 300,
            [&] { return TheoremExact(small); });
  Criterion(6, "Monte Carlo vs exact", 300, [&] { return MonteCarloVsExact(small); });
  Criterion(7, "lemma suites", 60, LemmaSuites);
  Criterion(8, "probabilistic lemma checks", 300,
            [&] { return ProbabilisticLemmas(up_to_eight); });
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace kicknext

int main() { return kicknext::Main(); }
