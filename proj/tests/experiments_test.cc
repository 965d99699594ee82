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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "test_util.h"
#include "theory.h"

namespace kicknext {
namespace {

using ::kicknext::testing::FourElementInstance;
using ::kicknext::testing::MixedInstance;
using ::kicknext::testing::UniformInstance;

const LemmaCheck* Find(const std::vector<LemmaCheck>& checks, std::string_view name) {
  for (const LemmaCheck& check : checks) {
    if (check.name == name) return &check;
  }
  return nullptr;
}

TEST(ExactRatioTest, SingleElementEqualsP) {
  const LaminarInstance single = UniformInstance({4.0}, 1);
  for (double p : {0.05, 0.08, 0.3, 0.9}) {
    const ExactResult result = ExactRatio(single, p);
    EXPECT_NEAR(result.ratio, p, 1e-15);
    EXPECT_NEAR(result.probability_mass, 1.0, 1e-15);
    EXPECT_EQ(result.opt_weight, 4.0);
  }
}

TEST(ExactRatioTest, RankOneTwoElementsClosedForm) {
  const LaminarInstance two = UniformInstance({1.0, 2.0}, 1);
  for (double p : {0.05, 0.08, 0.2, 0.5, 0.7}) {
    EXPECT_NEAR(ExactRatio(two, p).ratio, p * (1 - p) + 0.75 * p * p, 1e-15) << p;
  }
}

TEST(ExactRatioTest, GuardsAndMass) {
  const LaminarInstance nine = UniformInstance({1, 2, 3, 4, 5, 6, 7, 8, 9}, 3);
  EXPECT_THROW(ExactRatio(nine, 0.08), std::length_error);
  EXPECT_THROW(ExactRatio(FourElementInstance(), 0.0), std::invalid_argument);
  EXPECT_THROW(ExactRatio(FourElementInstance(), 1.0), std::invalid_argument);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ExactResult result = ExactRatio(MixedInstance(seed, 1 + seed % 8), 0.3);
    EXPECT_NEAR(result.probability_mass, 1.0, 1e-12);
    EXPECT_GE(result.ratio, 0.0);
    EXPECT_LE(result.ratio, 1.0 + 1e-12);
  }
}

TEST(MonteCarloTest, AgreesWithExact) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const LaminarInstance instance = MixedInstance(seed * 3, 6);
    const double exact = ExactRatio(instance, 0.2).ratio;
    const RatioEstimate estimate = MonteCarloRatio(instance, 0.2, 20000, seed);
    EXPECT_NEAR(estimate.mean, exact, 4 * estimate.std_err + 1e-12) << seed;
  }
}

TEST(MonteCarloTest, JobsInvariantAndDeterministic) {
  const LaminarInstance instance = MixedInstance(13, 11);
  const RatioEstimate one = MonteCarloRatio(instance, 0.08, 3001, 5, 1);
  const RatioEstimate three = MonteCarloRatio(instance, 0.08, 3001, 5, 3);
  EXPECT_EQ(one.mean, three.mean);
  EXPECT_EQ(one.std_err, three.std_err);
  const RatioEstimate single = MonteCarloRatio(instance, 0.08, 1, 9);
  EXPECT_EQ(single.mean, MonteCarloRatio(instance, 0.08, 1, 9).mean);
  EXPECT_EQ(single.std_err, 0.0);
  EXPECT_THROW(MonteCarloRatio(instance, 0.08, 0, 1), std::invalid_argument);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  ParallelFor(0, 4, [](std::size_t) { FAIL(); });
}

TEST(AllKickedTest, SingleElementAlwaysKicked) {
  // R(root) is one virtual element, below the only real one.
  const auto rows = AllKickedFrequency(UniformInstance({1.0}, 1), 0.08, 5000, 1);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].backward_rank, 0);
  EXPECT_EQ(rows[0].events, 0u);
  EXPECT_GT(rows[0].conditioned_trials, 300u);
  EXPECT_LT(rows[0].conditioned_trials, 500u);
}

TEST(AllKickedTest, FrequencyWithinBound) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LaminarInstance instance = MixedInstance(seed, 7 + seed % 5);
    for (const AllKickedRow& row : AllKickedFrequency(instance, 0.08, 20000, seed, 2)) {
      EXPECT_LE(row.frequency, row.bound + 4 * row.std_err + 1e-12)
          << seed << " " << row.element << " " << row.node;
      EXPECT_LE(row.events, row.conditioned_trials);
    }
  }
}

TEST(QualifyingTest, LawSumsToOneAndObeysBound) {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const LaminarInstance instance = MixedInstance(seed, 2 + seed % 7);
    for (std::size_t b = 0; b < instance.num_nodes(); ++b) {
      for (std::size_t i = 0; i < instance.num_elements(); ++i) {
        double mass = 0.0;
        for (const auto& [counts, probability] :
             QualifyingCountDistribution(instance, 0.08, b, i)) {
          EXPECT_EQ(counts.size(), static_cast<std::size_t>(instance.capacity(b)));
          const int total = std::accumulate(counts.begin(), counts.end(), 0);
          EXPECT_LE(probability, std::pow(0.08, total) + 1e-12);
          mass += probability;
        }
        EXPECT_NEAR(mass, 1.0, 1e-12);
      }
    }
  }
}

TEST(QualifyingTest, JointProbabilityModes) {
  const LaminarInstance four = FourElementInstance();
  const std::vector<int> zeros(3, 0);
  const QualifyingResult exact = QualifyingJointProbability(four, 0.08, four.root(), 0, zeros);
  EXPECT_TRUE(exact.exact);
  EXPECT_EQ(exact.bound, 1.0);
  EXPECT_GT(exact.probability, 0.0);

  const LaminarInstance big = UniformInstance({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 2);
  const std::vector<int> counts = {0, 0};
  const QualifyingResult sampled =
      QualifyingJointProbability(big, 0.08, big.root(), 9, counts, 20000, 3);
  EXPECT_FALSE(sampled.exact);
  EXPECT_EQ(sampled.samples, 20000u);
  EXPECT_LE(sampled.probability, sampled.bound + 4 * sampled.std_err);

  const std::vector<int> wrong_size = {0};
  EXPECT_THROW(QualifyingJointProbability(four, 0.08, four.root(), 0, wrong_size),
               std::invalid_argument);
  const std::vector<int> negative = {0, -1, 0};
  EXPECT_THROW(QualifyingJointProbability(four, 0.08, four.root(), 0, negative),
               std::invalid_argument);
}

TEST(VerifyLemmasTest, FourElementPasses) {
  const auto checks = VerifyLemmas(FourElementInstance(), 0.08, 20000, 7);
  EXPECT_TRUE(AllPassed(checks)) << ChecksSummary(checks);
  for (const char* name : {"g_lemma_refined", "g_lemma_weak", "weighted_lemma",
                           "telescoping_identity", "brank_dominance", "allkicked_bound",
                           "qualifying_count_lemma", "theorem_lower_bound_exact"}) {
    ASSERT_NE(Find(checks, name), nullptr) << name;
    EXPECT_EQ(Find(checks, name)->status, CheckStatus::kPass) << name;
  }
  const LemmaCheck* weighted = Find(checks, "weighted_lemma");
  const double c = 0.2944;
  EXPECT_NEAR(weighted->value, 10 * (c + c * c * c) + 5 * c * c + 2 * c, 1e-9);
}

TEST(VerifyLemmasTest, SkipsWhenCAtLeastHalf) {
  // p = 0.2 gives c = 0.64.
  const auto checks = VerifyLemmas(FourElementInstance(), 0.2, 2000, 7);
  for (const char* name : {"g_lemma_refined", "g_lemma_weak", "weighted_lemma",
                           "telescoping_identity"}) {
    ASSERT_NE(Find(checks, name), nullptr) << name;
    EXPECT_EQ(Find(checks, name)->status, CheckStatus::kSkipped) << name;
    EXPECT_EQ(Find(checks, name)->witness, "hypothesis not met: c >= 1/2");
  }
  EXPECT_TRUE(AllPassed(checks));
  EXPECT_THROW(VerifyLemmas(FourElementInstance(), 0.5, 10, 1), std::invalid_argument);
}

TEST(VerifyLemmasProperty, PassOnGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const LaminarInstance instance = MixedInstance(seed, 3 + seed % 9);
    const auto checks = VerifyLemmas(instance, 0.08, 4000, seed);
    EXPECT_TRUE(AllPassed(checks)) << ChecksSummary(checks);
  }
}

TEST(ExperimentReportTest, RowsAndCsv) {
  const ExperimentReport report = RunMonteCarloExperiment(FourElementInstance(), 0.08, 20000, 2);
  ASSERT_NE(Find(report.checks, "monte_carlo_ratio"), nullptr);
  ASSERT_NE(Find(report.checks, "theorem_lower_bound"), nullptr);
  ASSERT_NE(Find(report.checks, "exact_ratio_agreement"), nullptr);
  EXPECT_TRUE(AllPassed(report.checks)) << ChecksSummary(report.checks);
  const std::string csv = ChecksCsv(report.checks);
  EXPECT_EQ(csv.rfind("check_name,instance,p,value,bound_or_reference,std_err,pass\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);

  const ExperimentReport large =
      RunMonteCarloExperiment(UniformInstance({1, 2, 3, 4, 5, 6, 7, 8, 9}, 2), 0.6, 100, 2);
  EXPECT_EQ(Find(large.checks, "theorem_lower_bound"), nullptr);
  EXPECT_EQ(Find(large.checks, "exact_ratio_agreement"), nullptr);
}

}  // namespace
}  // namespace kicknext
