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

#ifndef KICKNEXT_SRC_EXPERIMENTS_H_
#define KICKNEXT_SRC_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "kick_next.h"
#include "model.h"

namespace kicknext {

// Mean of w(SOL(U)) / w(OPT) over independent trials. Trial k uses
// TrialSeed(master_seed, k); per-trial ratios are summed in trial order, so
// the result does not depend on `jobs`.
struct RatioEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sample stdev / sqrt(trials)
  std::size_t trials = 0;
  double opt_weight = 0.0;
};

// Throws std::invalid_argument if trials == 0 or w(OPT) == 0.
RatioEstimate MonteCarloRatio(const LaminarInstance& instance, double p,
                              std::size_t trials, std::uint64_t master_seed,
                              int jobs = 1, const RunConfig& config = {});

inline constexpr std::size_t kExactElementLimit = 8;

struct ExactResult {
  double ratio = 0.0;
  double expected_weight = 0.0;
  double opt_weight = 0.0;
  double probability_mass = 0.0;  // sum of all enumerated weights; 1 up to rounding
  std::size_t runs = 0;           // (sample, order) pairs executed
};

// E[w(SOL(U))] / w(OPT) by enumerating every sample set S (probability
// (1-p)^|S| p^|T|) and every arrival order of T. The order inside S cannot
// affect the algorithm and is not enumerated. Throws std::length_error above
// kExactElementLimit elements and std::invalid_argument unless 0 < p < 1.
ExactResult ExactRatio(const LaminarInstance& instance, double p, bool padding = true);

// Conditional frequency of AllKicked(i, B) given i not in S, for every
// i in OPT(U) and B in F(i), next to its analytical bound.
struct AllKickedRow {
  std::size_t element = 0;
  std::size_t node = 0;
  int backward_rank = 0;
  std::size_t conditioned_trials = 0;  // trials with i in T
  std::size_t events = 0;
  double frequency = 0.0;
  double std_err = 0.0;
  double bound = 0.0;
};

// Trials with i in S are discarded for i's rows. Requires 0 < p < 1/2.
std::vector<AllKickedRow> AllKickedFrequency(const LaminarInstance& instance, double p,
                                             std::size_t trials,
                                             std::uint64_t master_seed, int jobs = 1);

// (|N_1|, ..., |N_m|) for B with m = μ(B): N_j holds the elements x of T,
// other than the conditioning element, that qualify for B and lie strictly
// between a_j and a_{j+1} in the padded OPT_S(B) = {a_1 < ... < a_m}.
using CountVector = std::vector<int>;

// Exact law of the count vector given that `conditioning_element` is not in
// S. Throws std::length_error above kExactElementLimit elements.
std::map<CountVector, double> QualifyingCountDistribution(
    const LaminarInstance& instance, double p, std::size_t node,
    std::size_t conditioning_element);

struct QualifyingResult {
  double probability = 0.0;
  double std_err = 0.0;  // 0 in exact mode
  double bound = 0.0;    // p^(n_1 + ... + n_m)
  bool exact = false;
  std::size_t samples = 0;
};

// P(|N_1| = n_1, ..., |N_m| = n_m | i not in S): exact for small instances,
// Monte Carlo with `trials` samples otherwise. `counts` must have μ(B)
// entries, all non-negative.
QualifyingResult QualifyingJointProbability(const LaminarInstance& instance, double p,
                                            std::size_t node,
                                            std::size_t conditioning_element,
                                            std::span<const int> counts,
                                            std::size_t trials = 100000,
                                            std::uint64_t master_seed = 0);

enum class CheckStatus { kPass, kFail, kSkipped, kInfo };

struct LemmaCheck {
  std::string name;
  std::string instance;
  double p = 0.0;
  double value = 0.0;
  double reference = 0.0;
  double std_err = 0.0;
  CheckStatus status = CheckStatus::kPass;
  std::string witness;  // offending (node, m) or (element, node), if any
};

std::string_view CheckStatusName(CheckStatus status);

// Exact g-lemma, weighted-lemma and telescoping checks, backward-rank
// dominance over sampled trials, AllKicked frequencies against their bound
// and, for small instances, the qualifying-count lemma and the expected
// weight theorem. The instance is normalized first. Checks whose hypothesis
// c < 1/2 fails are reported as skipped. Requires 0 < p < 1/2.
std::vector<LemmaCheck> VerifyLemmas(const LaminarInstance& instance, double p,
                                     std::size_t trials, std::uint64_t master_seed,
                                     int jobs = 1);

bool AllPassed(std::span<const LemmaCheck> checks);

// Aggregated output of one Monte Carlo study.
struct ExperimentReport {
  std::string instance;
  double p = 0.0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  RatioEstimate ratio;
  std::vector<LemmaCheck> checks;
};

// Ratio estimate plus, when p < 1/2, the comparison against the expected
// weight theorem (one-sided, 3 standard errors) and, for small instances,
// against the exact expectation (4 standard errors).
ExperimentReport RunMonteCarloExperiment(const LaminarInstance& instance, double p,
                                         std::size_t trials, std::uint64_t master_seed,
                                         int jobs = 1);

// check_name,instance,p,value,bound_or_reference,std_err,pass
std::string ChecksCsv(std::span<const LemmaCheck> checks);
std::string ChecksSummary(std::span<const LemmaCheck> checks);

// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void ParallelFor(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace kicknext

#endif  // KICKNEXT_SRC_EXPERIMENTS_H_
