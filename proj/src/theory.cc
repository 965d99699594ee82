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

#include "theory.h"

#include <cmath>
#include <stdexcept>


namespace kicknext {

namespace {

void RequireHalfOpen(double p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw std::invalid_argument("p must lie in (0, 1/2)");
  }
}

void RequireC(double c) {
  if (!(c > 0.0 && c < 0.5)) {
    throw std::invalid_argument("c must lie in (0, 1/2)");
  }
}

// (p + (1-p) ln(1-p)) / p^2. The closed form cancels badly for small p, so
// use the series sum_{k>=2} p^(k-2) / (k (k-1)) there.
double ScaledNumerator(double p) {
  if (p < 0.02) {
    double sum = 0.0;
    double power = 1.0;
    for (int k = 2; k < 40; ++k) {
      sum += power / (k * (k - 1.0));
      power *= p;
    }
    return sum;
  }
  return (p + (1.0 - p) * std::log1p(-p)) / (p * p);
}

}  // namespace

TheoryParams ComputeTheoryParams(double p) {
  RequireHalfOpen(p);
  TheoryParams params;
  params.p = p;
  params.alpha = ScaledNumerator(p) / (2.0 * (1.0 - p));
  params.c = 4.0 * p * (1.0 - p);
  params.c_geo = params.c / (1.0 - params.c);
  return params;
}

double AlphaIntegratedForm(double p) {
  return -(p - (p - 1.0) * std::log(1.0 - p)) / (2.0 * (p - 1.0) * p * p);
}

double AllKickedBound(const TheoryParams& params, int backward_rank) {
  return params.alpha * std::pow(params.c, backward_rank + 1) / (1.0 - params.c);
}

double RelativeEntropy(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0) || !(y > 0.0 && y < 1.0)) {
    throw std::invalid_argument("relative entropy needs x in [0,1], y in (0,1)");
  }
  double value = 0.0;
  if (x > 0.0) value += x * std::log(x / y);
  if (x < 1.0) value += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  return value;
}

double PartialGeometricSum(double c, int i) {
  if (i <= 0) return 0.0;
  return c * (1.0 - std::pow(c, i)) / (1.0 - c);
}

double GExact(const LaminarInstance& instance, int m, std::size_t node, double c) {
  std::vector<RankedOptimum> optima =
      AllReferenceSets(instance, FullSubset(instance), /*padding=*/true);
  return GExact(instance, optima, m, node, c);
}

double GExact(const LaminarInstance& instance, std::span<const RankedOptimum> optima,
              int m, std::size_t node, double c) {
  const std::vector<std::size_t>& members = optima[node].elements;
  if (m < 0 || static_cast<std::size_t>(m) > members.size()) {
    throw std::invalid_argument("g: m exceeds the real elements of OPT(B)");
  }
  double total = 0.0;
  for (std::size_t j = members.size() - m; j < members.size(); ++j) {
    const std::size_t e = members[j];
    for (std::size_t b : Chain(instance, instance.minimal_node(e), node)) {
      total += std::pow(c, 1 + optima[b].CountBelow(instance, e));
    }
  }
  return total;
}

double GRefinedBound(int m, int k, double c) {
  if (m < 0 || m > k) throw std::invalid_argument("g bound needs 0 <= m <= k");
  RequireC(c);
  double bound = 0.0;
  for (int i = 1; i < m; ++i) bound += 2.0 * PartialGeometricSum(c, i);
  const double c_m = PartialGeometricSum(c, m);
  return bound + c_m + c_m * PartialGeometricSum(c, k - m);
}

double GWeakBound(int m, double c) { return 2.0 * c / (1.0 - c) * m; }

double WeightedPenalty(const LaminarInstance& instance, double c) {
  RequireC(c);
  std::vector<RankedOptimum> optima =
      AllReferenceSets(instance, FullSubset(instance), /*padding=*/true);
  double total = 0.0;
  for (std::size_t e : optima[instance.root()].elements) {
    double inner = 0.0;
    for (std::size_t b = instance.minimal_node(e); b != kNoNode; b = instance.parent(b)) {
      inner += std::pow(c, 1 + optima[b].CountBelow(instance, e));
    }
    total += instance.weight(e) * inner;
  }
  return total;
}

double TelescopedPenalty(const LaminarInstance& instance, double c) {
  RequireC(c);
  std::vector<RankedOptimum> optima =
      AllReferenceSets(instance, FullSubset(instance), /*padding=*/true);
  const std::size_t root = instance.root();
  const std::vector<std::size_t>& opt = optima[root].elements;  // ascending
  const int count = static_cast<int>(opt.size());
  double total = 0.0;
  for (int l = 1; l <= count; ++l) {
    const double w_l = instance.weight(opt[count - l]);
    const double w_next = l < count ? instance.weight(opt[count - l - 1]) : 0.0;
    total += (w_l - w_next) * GExact(instance, optima, l, root, c);
  }
  return total;
}

double RatioLowerBound(double p) {
  const TheoryParams params = ComputeTheoryParams(p);
  const double gap = 1.0 - params.c;
  return p * (1.0 - 2.0 * params.alpha * params.c / (gap * gap));
}

BestP FindBestP(double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  BestP best;
  bool found = false;
  for (long k = 1;; ++k) {
    const double p = k * step;
    if (p >= 0.5) break;
    const double ratio = RatioLowerBound(p);
    if (!found || ratio > best.ratio) best = {p, ratio};
    found = true;
  }
  if (!found) throw std::invalid_argument("grid step leaves no point below 1/2");
  return best;
}

BestP FindBestP(double p_min, double p_max, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (!(p_min <= p_max)) throw std::invalid_argument("empty grid: p_min > p_max");
  BestP best;
  bool found = false;
  for (long k = 0;; ++k) {
    const double p = p_min + k * step;
    if (p > p_max + 1e-12 * step) break;
    const double ratio = RatioLowerBound(p);
    if (!found || ratio > best.ratio) best = {p, ratio};
    found = true;
  }
  return best;
}

}  // namespace kicknext
