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

#include "experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "matroid.h"
#include "random.h"
#include "theory.h"

namespace kicknext {

namespace {

constexpr double kExactTolerance = 1e-12;

double OptWeight(const LaminarInstance& instance) {
  return GreedyOpt(instance, FullSubset(instance), instance.root()).Weight(instance);
}

void RequireProbability(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
}

void RequireSmall(const LaminarInstance& instance) {
  if (instance.num_elements() > kExactElementLimit) {
    throw std::length_error("exact enumeration is limited to " +
                            std::to_string(kExactElementLimit) + " elements");
  }
}

std::string Format(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

// Splits [0, count) into `chunks` contiguous ranges.
std::pair<std::size_t, std::size_t> ChunkRange(std::size_t count, std::size_t chunks,
                                               std::size_t chunk) {
  return {count * chunk / chunks, count * (chunk + 1) / chunks};
}

CountVector QualifyingCounts(const LaminarInstance& instance, const Subset& sample,
                             std::size_t node, std::size_t conditioning_element) {
  std::vector<RankedOptimum> refs = AllReferenceSets(instance, sample, /*padding=*/true);
  const RankedOptimum& reference = refs[node];
  CountVector counts(reference.size(), 0);
  for (std::size_t x = 0; x < instance.num_elements(); ++x) {
    if (sample[x] || x == conditioning_element || !instance.Contains(node, x)) continue;
    if (!Qualifies(instance, x, node, refs)) continue;
    // Qualifying for B puts at least a_1 below x.
    const int below = reference.CountBelow(instance, x);
    ++counts[below - 1];
  }
  return counts;
}

}  // namespace

void ParallelFor(std::size_t count, int jobs,
                 const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        auto [begin, end] = ChunkRange(count, workers, w);
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& thread : threads) thread.join();
  if (failure) std::rethrow_exception(failure);
}

RatioEstimate MonteCarloRatio(const LaminarInstance& instance, double p,
                              std::size_t trials, std::uint64_t master_seed, int jobs,
                              const RunConfig& config) {
  RequireProbability(p);
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const double opt = OptWeight(instance);
  if (!(opt > 0.0)) throw std::invalid_argument("degenerate instance: w(OPT) = 0");

  RunConfig quiet = config;
  quiet.trace = false;
  std::vector<double> ratios(trials);
  ParallelFor(trials, jobs, [&](std::size_t k) {
    Trial trial = MakeTrial(instance, p, TrialSeed(master_seed, k));
    ratios[k] = RunKickNext(instance, trial, quiet).Weight(instance) / opt;
  });

  RatioEstimate estimate;
  estimate.trials = trials;
  estimate.opt_weight = opt;
  double sum = 0.0;
  for (double r : ratios) sum += r;
  estimate.mean = sum / trials;
  if (trials > 1) {
    double squares = 0.0;
    for (double r : ratios) squares += (r - estimate.mean) * (r - estimate.mean);
    estimate.std_err = std::sqrt(squares / (trials - 1) / trials);
  }
  return estimate;
}

ExactResult ExactRatio(const LaminarInstance& instance, double p, bool padding) {
  RequireProbability(p);
  RequireSmall(instance);
  const double opt = OptWeight(instance);
  if (!(opt > 0.0)) throw std::invalid_argument("degenerate instance: w(OPT) = 0");

  const std::size_t n = instance.num_elements();
  ExactResult result;
  result.opt_weight = opt;
  RunConfig config;
  config.padding = padding;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Subset sample(n, false);
    std::vector<std::size_t> arrivals;
    for (std::size_t e = 0; e < n; ++e) {
      if (mask >> e & 1) {
        sample[e] = true;
      } else {
        arrivals.push_back(e);
      }
    }
    const double weight = std::pow(1.0 - p, static_cast<double>(n - arrivals.size())) *
                          std::pow(p, static_cast<double>(arrivals.size()));
    result.probability_mass += weight;

    const std::vector<RankedOptimum> refs = AllReferenceSets(instance, sample, padding);
    double total = 0.0;
    std::size_t orders = 0;
    do {
      total += RunSelection(instance, refs, arrivals, config).Weight(instance);
      ++orders;
    } while (std::next_permutation(arrivals.begin(), arrivals.end()));
    result.runs += orders;
    result.expected_weight += weight * total / static_cast<double>(orders);
  }
  result.ratio = result.expected_weight / opt;
  return result;
}

std::vector<AllKickedRow> AllKickedFrequency(const LaminarInstance& instance, double p,
                                             std::size_t trials,
                                             std::uint64_t master_seed, int jobs) {
  const TheoryParams params = ComputeTheoryParams(p);
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const std::vector<RankedOptimum> optima =
      AllReferenceSets(instance, FullSubset(instance), /*padding=*/true);

  std::vector<AllKickedRow> rows;
  // Row index of (element, node) pairs, keyed by element then chain depth.
  std::vector<std::vector<std::size_t>> row_of(instance.num_elements());
  std::vector<bool> in_opt(instance.num_elements(), false);
  for (auto it = optima[instance.root()].elements.rbegin();
       it != optima[instance.root()].elements.rend(); ++it) {
    const std::size_t e = *it;
    in_opt[e] = true;
    for (std::size_t b = instance.minimal_node(e); b != kNoNode; b = instance.parent(b)) {
      AllKickedRow row;
      row.element = e;
      row.node = b;
      row.backward_rank = optima[b].CountBelow(instance, e);
      row.bound = AllKickedBound(params, row.backward_rank);
      row_of[e].push_back(rows.size());
      rows.push_back(row);
    }
  }

  const std::size_t chunks = std::min<std::size_t>(trials, std::max(jobs, 1));
  std::vector<std::vector<std::size_t>> conditioned(chunks,
                                                    std::vector<std::size_t>(rows.size()));
  std::vector<std::vector<std::size_t>> events(chunks, std::vector<std::size_t>(rows.size()));
  ParallelFor(chunks, jobs, [&](std::size_t chunk) {
    auto [begin, end] = ChunkRange(trials, chunks, chunk);
    for (std::size_t k = begin; k < end; ++k) {
      Trial trial = MakeTrial(instance, p, TrialSeed(master_seed, k));
      RunResult run = RunKickNext(instance, trial);
      for (const ArrivalRecord& arrival : run.arrivals) {
        if (!in_opt[arrival.element]) continue;
        const std::vector<std::size_t>& indices = row_of[arrival.element];
        for (std::size_t r : indices) {
          ++conditioned[chunk][r];
          if (std::find(arrival.allkicked_nodes.begin(), arrival.allkicked_nodes.end(),
                        rows[r].node) != arrival.allkicked_nodes.end()) {
            ++events[chunk][r];
          }
        }
      }
    }
  });

  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t chunk = 0; chunk < chunks; ++chunk) {
      rows[r].conditioned_trials += conditioned[chunk][r];
      rows[r].events += events[chunk][r];
    }
    if (rows[r].conditioned_trials > 0) {
      const double count = static_cast<double>(rows[r].conditioned_trials);
      const double f = rows[r].events / count;
      rows[r].frequency = f;
      rows[r].std_err = std::sqrt(f * (1.0 - f) / count);
    }
  }
  return rows;
}

std::map<CountVector, double> QualifyingCountDistribution(
    const LaminarInstance& instance, double p, std::size_t node,
    std::size_t conditioning_element) {
  RequireProbability(p);
  RequireSmall(instance);
  if (node >= instance.num_nodes() || conditioning_element >= instance.num_elements()) {
    throw std::out_of_range("node or conditioning element out of range");
  }
  const std::size_t n = instance.num_elements();
  std::vector<std::size_t> others;
  for (std::size_t e = 0; e < n; ++e) {
    if (e != conditioning_element) others.push_back(e);
  }
  std::map<CountVector, double> law;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()); ++mask) {
    Subset sample(n, false);
    std::size_t in_sample = 0;
    for (std::size_t j = 0; j < others.size(); ++j) {
      if (mask >> j & 1) {
        sample[others[j]] = true;
        ++in_sample;
      }
    }
    const double weight =
        std::pow(1.0 - p, static_cast<double>(in_sample)) *
        std::pow(p, static_cast<double>(others.size() - in_sample));
    law[QualifyingCounts(instance, sample, node, conditioning_element)] += weight;
  }
  return law;
}

QualifyingResult QualifyingJointProbability(const LaminarInstance& instance, double p,
                                            std::size_t node,
                                            std::size_t conditioning_element,
                                            std::span<const int> counts,
                                            std::size_t trials,
                                            std::uint64_t master_seed) {
  RequireProbability(p);
  if (node >= instance.num_nodes() || conditioning_element >= instance.num_elements()) {
    throw std::out_of_range("node or conditioning element out of range");
  }
  if (counts.size() != static_cast<std::size_t>(instance.capacity(node))) {
    throw std::invalid_argument("need one count per slot of the node's capacity");
  }
  int total = 0;
  for (int count : counts) {
    if (count < 0) throw std::invalid_argument("counts must be non-negative");
    total += count;
  }
  const CountVector target(counts.begin(), counts.end());

  QualifyingResult result;
  result.bound = std::pow(p, total);
  if (instance.num_elements() <= kExactElementLimit) {
    const auto law = QualifyingCountDistribution(instance, p, node, conditioning_element);
    auto it = law.find(target);
    result.probability = it == law.end() ? 0.0 : it->second;
    result.exact = true;
    return result;
  }

  if (trials == 0) throw std::invalid_argument("need at least one trial");
  std::size_t hits = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(TrialSeed(master_seed, k));
    Subset sample(instance.num_elements(), false);
    for (std::size_t e = 0; e < instance.num_elements(); ++e) {
      // Always draw, so the stream is the same whatever the conditioning element.
      const bool in_sample = rng.Bernoulli(1.0 - p);
      sample[e] = in_sample && e != conditioning_element;
    }
    if (QualifyingCounts(instance, sample, node, conditioning_element) == target) ++hits;
  }
  result.samples = trials;
  result.probability = static_cast<double>(hits) / trials;
  result.std_err =
      std::sqrt(result.probability * (1.0 - result.probability) / trials);
  return result;
}

std::string_view CheckStatusName(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
    case CheckStatus::kInfo: return "info";
  }
  return "unknown";
}

bool AllPassed(std::span<const LemmaCheck> checks) {
  return std::none_of(checks.begin(), checks.end(), [](const LemmaCheck& check) {
    return check.status == CheckStatus::kFail;
  });
}

std::vector<LemmaCheck> VerifyLemmas(const LaminarInstance& input, double p,
                                     std::size_t trials, std::uint64_t master_seed,
                                     int jobs) {
  const TheoryParams params = ComputeTheoryParams(p);
  const LaminarInstance instance = NormalizeFamily(input);
  const std::string& name = instance.name();
  const double c = params.c;
  const bool hypothesis = c < 0.5;
  const std::vector<RankedOptimum> optima =
      AllReferenceSets(instance, FullSubset(instance), /*padding=*/true);
  std::vector<LemmaCheck> checks;

  auto make = [&](std::string check_name) {
    LemmaCheck check;
    check.name = std::move(check_name);
    check.instance = name;
    check.p = p;
    return check;
  };
  auto skip = [&](LemmaCheck check) {
    check.status = CheckStatus::kSkipped;
    check.witness = "hypothesis not met: c >= 1/2";
    checks.push_back(std::move(check));
  };

  // g(m, B) <= refined bound <= weak bound, over every node and m >= 1
  // (both sides vanish at m = 0).
  {
    LemmaCheck refined = make("g_lemma_refined");
    LemmaCheck weak = make("g_lemma_weak");
    if (!hypothesis) {
      skip(refined);
      skip(weak);
    } else {
      double worst_refined = -INFINITY, worst_weak = -INFINITY;
      for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
        const int real = static_cast<int>(optima[b].elements.size());
        for (int m = 1; m <= real; ++m) {
          const double g = GExact(instance, optima, m, b, c);
          const double bound = GRefinedBound(m, instance.capacity(b), c);
          const double weak_bound = GWeakBound(m, c);
          std::ostringstream where;
          where << "node=" << instance.node(b).id << " m=" << m;
          if (g - bound > worst_refined) {
            worst_refined = g - bound;
            refined.value = g;
            refined.reference = bound;
            refined.witness = where.str();
          }
          if (bound - weak_bound > worst_weak) {
            worst_weak = bound - weak_bound;
            weak.value = bound;
            weak.reference = weak_bound;
            weak.witness = where.str();
          }
        }
      }
      refined.status = worst_refined <= kExactTolerance ? CheckStatus::kPass : CheckStatus::kFail;
      weak.status = worst_weak <= kExactTolerance ? CheckStatus::kPass : CheckStatus::kFail;
      checks.push_back(refined);
      checks.push_back(weak);
    }
  }

  {
    LemmaCheck weighted = make("weighted_lemma");
    LemmaCheck telescoping = make("telescoping_identity");
    if (!hypothesis) {
      skip(weighted);
      skip(telescoping);
    } else {
      const double opt_weight = optima[instance.root()].Weight(instance);
      weighted.value = WeightedPenalty(instance, c);
      weighted.reference = 2.0 * c / (1.0 - c) * opt_weight;
      weighted.status = weighted.value <= weighted.reference + kExactTolerance
                            ? CheckStatus::kPass
                            : CheckStatus::kFail;
      telescoping.value = TelescopedPenalty(instance, c);
      telescoping.reference = weighted.value;
      telescoping.status =
          std::abs(telescoping.value - telescoping.reference) <=
                  1e-9 * std::max(1.0, std::abs(telescoping.reference))
              ? CheckStatus::kPass
              : CheckStatus::kFail;
      checks.push_back(weighted);
      checks.push_back(telescoping);
    }
  }

  // Backward-rank dominance over sampled splits.
  if (trials > 0) {
    std::size_t dominance = 0, plus_one = 0, strong = 0, pairs = 0;
    std::string dominance_witness, plus_one_witness, strong_witness;
    for (std::size_t k = 0; k < trials; ++k) {
      Trial trial = MakeTrial(instance, p, TrialSeed(master_seed, k));
      const std::vector<RankedOptimum> refs =
          AllReferenceSets(instance, trial.sample, /*padding=*/true);
      for (std::size_t e = 0; e < instance.num_elements(); ++e) {
        for (std::size_t b = instance.minimal_node(e); b != kNoNode; b = instance.parent(b)) {
          ++pairs;
          const int sampled = refs[b].CountBelow(instance, e);
          const int full = optima[b].CountBelow(instance, e);
          std::ostringstream where;
          where << "trial=" << k << " element=" << instance.element(e).id
                << " node=" << instance.node(b).id;
          if (sampled < full) {
            if (dominance++ == 0) dominance_witness = where.str();
          }
          if (trial.sample[e]) continue;
          if (sampled < full + 1) {
            if (optima[b].Contains(e)) {
              if (plus_one++ == 0) plus_one_witness = where.str();
            }
            if (strong++ == 0) strong_witness = where.str();
          }
        }
      }
    }
    LemmaCheck check = make("brank_dominance");
    check.value = static_cast<double>(dominance);
    check.status = dominance == 0 ? CheckStatus::kPass : CheckStatus::kFail;
    check.witness = dominance_witness;
    checks.push_back(check);

    check = make("brank_plus_one_opt_in_T");
    check.value = static_cast<double>(plus_one);
    check.status = plus_one == 0 ? CheckStatus::kPass : CheckStatus::kFail;
    check.witness = plus_one_witness;
    checks.push_back(check);

    // The stronger form (all of T) is only logged.
    check = make("brank_plus_one_all_T");
    check.value = static_cast<double>(strong);
    check.reference = static_cast<double>(pairs);
    check.status = CheckStatus::kInfo;
    check.witness = strong_witness;
    checks.push_back(check);

    for (const AllKickedRow& row : AllKickedFrequency(instance, p, trials, master_seed, jobs)) {
      LemmaCheck kicked = make("allkicked_bound");
      kicked.value = row.frequency;
      kicked.reference = row.bound;
      kicked.std_err = row.std_err;
      kicked.status = row.frequency <= row.bound + 4.0 * row.std_err ? CheckStatus::kPass
                                                                     : CheckStatus::kFail;
      std::ostringstream where;
      where << "element=" << instance.element(row.element).id
            << " node=" << instance.node(row.node).id << " brank=" << row.backward_rank
            << " conditioned=" << row.conditioned_trials;
      kicked.witness = where.str();
      checks.push_back(kicked);
    }
  }

  if (instance.num_elements() <= kExactElementLimit) {
    LemmaCheck qualifying = make("qualifying_count_lemma");
    double worst = -INFINITY;
    for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
      for (std::size_t i = 0; i < instance.num_elements(); ++i) {
        for (const auto& [counts, probability] :
             QualifyingCountDistribution(instance, p, b, i)) {
          const int total = std::accumulate(counts.begin(), counts.end(), 0);
          const double bound = std::pow(p, total);
          if (probability - bound > worst) {
            worst = probability - bound;
            qualifying.value = probability;
            qualifying.reference = bound;
            std::ostringstream where;
            where << "node=" << instance.node(b).id
                  << " conditioning=" << instance.element(i).id << " counts=(";
            for (std::size_t j = 0; j < counts.size(); ++j) {
              where << (j ? " " : "") << counts[j];
            }
            where << ")";
            qualifying.witness = where.str();
          }
        }
      }
    }
    qualifying.status = worst <= kExactTolerance ? CheckStatus::kPass : CheckStatus::kFail;
    checks.push_back(qualifying);

    LemmaCheck theorem = make("theorem_lower_bound_exact");
    theorem.value = ExactRatio(instance, p).ratio;
    theorem.reference = RatioLowerBound(p);
    theorem.status = theorem.value >= theorem.reference - 1e-9 ? CheckStatus::kPass
                                                               : CheckStatus::kFail;
    checks.push_back(theorem);
  }
  return checks;
}

ExperimentReport RunMonteCarloExperiment(const LaminarInstance& instance, double p,
                                         std::size_t trials, std::uint64_t master_seed,
                                         int jobs) {
  ExperimentReport report;
  report.instance = instance.name();
  report.p = p;
  report.trials = trials;
  report.master_seed = master_seed;
  report.ratio = MonteCarloRatio(instance, p, trials, master_seed, jobs);

  LemmaCheck estimate;
  estimate.name = "monte_carlo_ratio";
  estimate.instance = instance.name();
  estimate.p = p;
  estimate.value = report.ratio.mean;
  estimate.std_err = report.ratio.std_err;
  estimate.status = CheckStatus::kInfo;
  report.checks.push_back(estimate);

  if (p < 0.5) {
    LemmaCheck theorem = estimate;
    theorem.name = "theorem_lower_bound";
    theorem.reference = RatioLowerBound(p);
    theorem.status = theorem.value >= theorem.reference - 3.0 * theorem.std_err
                         ? CheckStatus::kPass
                         : CheckStatus::kFail;
    report.checks.push_back(theorem);
  }
  if (instance.num_elements() <= kExactElementLimit) {
    LemmaCheck exact = estimate;
    exact.name = "exact_ratio_agreement";
    exact.reference = ExactRatio(instance, p).ratio;
    const double slack = std::max(4.0 * exact.std_err, kExactTolerance);
    exact.status = std::abs(exact.value - exact.reference) <= slack ? CheckStatus::kPass
                                                                   : CheckStatus::kFail;
    report.checks.push_back(exact);
  }
  return report;
}

std::string ChecksCsv(std::span<const LemmaCheck> checks) {
  std::ostringstream out;
  out << "check_name,instance,p,value,bound_or_reference,std_err,pass\n";
  for (const LemmaCheck& check : checks) {
    out << check.name << ',' << CsvField(check.instance) << ',' << Format(check.p) << ','
        << Format(check.value) << ',' << Format(check.reference) << ','
        << Format(check.std_err) << ',' << CheckStatusName(check.status) << '\n';
  }
  return out.str();
}

std::string ChecksSummary(std::span<const LemmaCheck> checks) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const LemmaCheck& check : checks) {
    out << '[' << CheckStatusName(check.status) << "] " << check.name << ": value "
        << Format(check.value) << " vs " << Format(check.reference);
    if (check.std_err > 0.0) out << " (se " << Format(check.std_err) << ")";
    if (!check.witness.empty()) out << " {" << check.witness << "}";
    out << '\n';
    if (check.status == CheckStatus::kFail) ++failed;
  }
  out << checks.size() << " checks, " << failed << " failed\n";
  return out.str();
}

}  // namespace kicknext
