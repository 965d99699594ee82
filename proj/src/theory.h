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

#ifndef KICKNEXT_SRC_THEORY_H_
#define KICKNEXT_SRC_THEORY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "matroid.h"
#include "model.h"

namespace kicknext {

// Analysis constants for selection probability p in (0, 1/2):
//   alpha = (p + (1-p) ln(1-p)) / (2 (1-p) p^2)
//   c     = 4 p (1-p)
//   c_geo = c / (1-c)
struct TheoryParams {
  double p = 0.0;
  double alpha = 0.0;
  double c = 0.0;
  double c_geo = 0.0;
};

// Throws std::invalid_argument unless 0 < p < 1/2.
TheoryParams ComputeTheoryParams(double p);

// alpha written as it appears after integrating over the arrival position,
// -(p - (p-1) ln(1-p)) / (2 (p-1) p^2). Algebraically equal to
// TheoryParams::alpha; kept as a cross-check.
double AlphaIntegratedForm(double p);

// Upper bound alpha c^(d+1) / (1-c) on P(AllKicked(i, B) | i not in S) for
// i in OPT with brank(i, B) = d.
double AllKickedBound(const TheoryParams& params, int backward_rank);

// x ln(x/y) + (1-x) ln((1-x)/(1-y)), natural log, 0 ln 0 = 0.
// Throws std::invalid_argument unless 0 <= x <= 1 and 0 < y < 1.
double RelativeEntropy(double x, double y);

// c_i = c + c^2 + ... + c^i (c_0 = 0), in closed form.
double PartialGeometricSum(double c, int i);

// g(m, B): sum over the m heaviest elements i of OPT(B) of
// sum_{B' in Chain[M(i), B]} c^(1 + brank(i, B')), with backward ranks taken
// against the padded true optima. Throws std::invalid_argument if m exceeds
// the number of real elements in OPT(B).
double GExact(const LaminarInstance& instance, int m, std::size_t node, double c);
// Same, reusing padded optima of every node (AllReferenceSets(U, true)).
double GExact(const LaminarInstance& instance, std::span<const RankedOptimum> optima,
              int m, std::size_t node, double c);

// 2 c_1 + ... + 2 c_{m-1} + c_m + c_m c_{k-m}. Throws std::invalid_argument
// unless 0 <= m <= k and 0 < c < 1/2.
double GRefinedBound(int m, int k, double c);
// (2c / (1-c)) m.
double GWeakBound(int m, double c);

// sum_{i in OPT} w(i) sum_{B in F(i)} c^(1 + brank(i, B)).
// Throws std::invalid_argument unless 0 < c < 1/2.
double WeightedPenalty(const LaminarInstance& instance, double c);
// The same quantity via sum_l (w(x_l) - w(x_{l+1})) g(l, U), with OPT sorted
// heaviest first and w(x_{L+1}) = 0.
double TelescopedPenalty(const LaminarInstance& instance, double c);

// p (1 - 2 alpha c / (1-c)^2). Throws std::invalid_argument unless
// 0 < p < 1/2.
double RatioLowerBound(double p);

struct BestP {
  double p = 0.0;
  double ratio = 0.0;
};

// Grid argmax of RatioLowerBound over p = step, 2 step, ... < 1/2.
BestP FindBestP(double step);
// Grid argmax over p = p_min, p_min + step, ... <= p_max.
BestP FindBestP(double p_min, double p_max, double step);

}  // namespace kicknext

#endif  // KICKNEXT_SRC_THEORY_H_
