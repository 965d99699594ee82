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

#include "kicknext/kicknext.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "experiments.h"
#include "generators.h"
#include "kick_next.h"
#include "matroid.h"
#include "model.h"
#include "theory.h"

struct kn_instance {
  kicknext::LaminarInstance value;
};

struct kn_run {
  kicknext::LaminarInstance instance;
  kicknext::Trial trial;
  kicknext::RunResult result;
  double opt_weight;
};

namespace {

thread_local std::string last_error;

kn_status Fail(kn_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
kn_status Guard(Body&& body) {
  try {
    body();
    return KN_OK;
  } catch (const kicknext::InstanceError& err) {
    return Fail(KN_ERR_INSTANCE, err.what());
  } catch (const std::length_error& err) {
    return Fail(KN_ERR_TOO_LARGE, err.what());
  } catch (const std::invalid_argument& err) {
    return Fail(KN_ERR_INVALID_ARGUMENT, err.what());
  } catch (const std::out_of_range& err) {
    return Fail(KN_ERR_INVALID_ARGUMENT, err.what());
  } catch (const std::bad_alloc&) {
    return Fail(KN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& err) {
    return Fail(KN_ERR_INTERNAL, err.what());
  }
}

char* CopyString(const std::string& text) {
  char* block = static_cast<char*>(std::malloc(text.size() + 1));
  if (block == nullptr) throw std::bad_alloc();
  std::memcpy(block, text.c_str(), text.size() + 1);
  return block;
}

int64_t* CopyIds(const std::vector<int64_t>& ids) {
  int64_t* block = static_cast<int64_t*>(std::malloc(std::max<size_t>(ids.size(), 1) *
                                                     sizeof(int64_t)));
  if (block == nullptr) throw std::bad_alloc();
  std::copy(ids.begin(), ids.end(), block);
  return block;
}

bool MissingOutput(const void* pointer) {
  if (pointer != nullptr) return false;
  last_error = "null argument";
  return true;
}

kn_status ReportOptimum(const kn_instance* instance, int64_t node_id, bool brute_force,
                        int64_t** element_ids, size_t* count, double* weight) {
  if (MissingOutput(instance) || MissingOutput(element_ids) || MissingOutput(count)) {
    return KN_ERR_INVALID_ARGUMENT;
  }
  return Guard([&] {
    const kicknext::LaminarInstance& inst = instance->value;
    const std::size_t node = inst.node_index(node_id);
    const kicknext::Subset all = kicknext::FullSubset(inst);
    const kicknext::RankedOptimum opt = brute_force
                                            ? kicknext::BruteForceOpt(inst, all, node)
                                            : kicknext::GreedyOpt(inst, all, node);
    std::vector<int64_t> ids;
    for (auto it = opt.elements.rbegin(); it != opt.elements.rend(); ++it) {
      ids.push_back(inst.element(*it).id);
    }
    *element_ids = CopyIds(ids);
    *count = ids.size();
    if (weight != nullptr) *weight = opt.Weight(inst);
  });
}

}  // namespace

extern "C" {

const char* kn_last_error(void) { return last_error.c_str(); }

const char* kn_version(void) { return "1.0.0"; }

void kn_free(void* block) { std::free(block); }

kn_status kn_instance_parse(const char* json, kn_instance** out) {
  if (MissingOutput(json) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] { *out = new kn_instance{kicknext::LoadInstance(json)}; });
}

kn_status kn_instance_load(const char* path, kn_instance** out) {
  if (MissingOutput(path) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  std::ifstream in(path, std::ios::binary);
  if (!in) return Fail(KN_ERR_IO, std::string("cannot open instance file: ") + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Guard([&] { *out = new kn_instance{kicknext::LoadInstance(buffer.str())}; });
}

kn_status kn_instance_save(const kn_instance* instance, char** json_out) {
  if (MissingOutput(instance) || MissingOutput(json_out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] { *json_out = CopyString(kicknext::SaveInstance(instance->value)); });
}

kn_status kn_instance_normalize(const kn_instance* instance, kn_instance** out) {
  if (MissingOutput(instance) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] { *out = new kn_instance{kicknext::NormalizeFamily(instance->value)}; });
}

void kn_instance_destroy(kn_instance* instance) { delete instance; }

const char* kn_instance_name(const kn_instance* instance) {
  return instance ? instance->value.name().c_str() : "";
}

size_t kn_instance_num_elements(const kn_instance* instance) {
  return instance ? instance->value.num_elements() : 0;
}

size_t kn_instance_num_nodes(const kn_instance* instance) {
  return instance ? instance->value.num_nodes() : 0;
}

int64_t kn_instance_root_id(const kn_instance* instance) {
  return instance ? instance->value.node(instance->value.root()).id : -1;
}

void kn_gen_spec_init(kn_gen_spec* spec) {
  if (spec == nullptr) return;
  const kicknext::GenSpec defaults;
  spec->family = "uniform";
  spec->weights = "uniform";
  spec->n = defaults.n;
  spec->seed = defaults.seed;
  spec->power_law_exponent = defaults.power_law_exponent;
  spec->k = defaults.k;
  spec->parts = defaults.parts;
  spec->depth = defaults.depth;
  spec->nodes = defaults.nodes;
  spec->max_branching = defaults.max_branching;
  spec->name = nullptr;
}

kn_status kn_generate(const kn_gen_spec* spec, kn_instance** out) {
  if (MissingOutput(spec) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    kicknext::GenSpec gen;
    gen.family = kicknext::ParseFamily(spec->family ? spec->family : "");
    gen.weights = kicknext::ParseWeightDistribution(spec->weights ? spec->weights : "");
    gen.n = spec->n;
    gen.seed = spec->seed;
    gen.power_law_exponent = spec->power_law_exponent;
    gen.k = spec->k;
    gen.parts = spec->parts;
    gen.depth = spec->depth;
    gen.nodes = spec->nodes;
    gen.max_branching = spec->max_branching;
    if (spec->name != nullptr) gen.name = spec->name;
    *out = new kn_instance{kicknext::Generate(gen)};
  });
}

kn_status kn_is_independent(const kn_instance* instance, const int64_t* element_ids,
                            size_t count, int* independent) {
  if (MissingOutput(instance) || MissingOutput(independent) ||
      (count > 0 && MissingOutput(element_ids))) {
    return KN_ERR_INVALID_ARGUMENT;
  }
  return Guard([&] {
    std::vector<std::size_t> indices;
    for (size_t j = 0; j < count; ++j) {
      indices.push_back(instance->value.element_index(element_ids[j]));
    }
    *independent = kicknext::IsIndependent(instance->value, indices) ? 1 : 0;
  });
}

kn_status kn_greedy_opt(const kn_instance* instance, int64_t node_id,
                        int64_t** element_ids, size_t* count, double* weight) {
  return ReportOptimum(instance, node_id, false, element_ids, count, weight);
}

kn_status kn_brute_force_opt(const kn_instance* instance, int64_t node_id,
                             int64_t** element_ids, size_t* count, double* weight) {
  return ReportOptimum(instance, node_id, true, element_ids, count, weight);
}

kn_status kn_run_trial(const kn_instance* instance, double p, uint64_t seed, int padding,
                       int trace, kn_run** out) {
  if (MissingOutput(instance) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    const kicknext::LaminarInstance& inst = instance->value;
    kicknext::Trial trial = kicknext::MakeTrial(inst, p, seed);
    kicknext::RunConfig config{padding != 0, trace != 0};
    kicknext::RunResult result = kicknext::RunKickNext(inst, trial, config);
    const double opt =
        kicknext::GreedyOpt(inst, kicknext::FullSubset(inst), inst.root()).Weight(inst);
    *out = new kn_run{inst, std::move(trial), std::move(result), opt};
  });
}

void kn_run_destroy(kn_run* run) { delete run; }

double kn_run_weight(const kn_run* run) {
  return run ? run->result.Weight(run->instance) : 0.0;
}

double kn_run_opt_weight(const kn_run* run) { return run ? run->opt_weight : 0.0; }

size_t kn_run_sample_size(const kn_run* run) {
  if (run == nullptr) return 0;
  return run->instance.num_elements() - run->trial.arrival_order.size();
}

kn_status kn_run_selected(const kn_run* run, int64_t** element_ids, size_t* count) {
  if (MissingOutput(run) || MissingOutput(element_ids) || MissingOutput(count)) {
    return KN_ERR_INVALID_ARGUMENT;
  }
  return Guard([&] {
    std::vector<int64_t> ids;
    for (std::size_t e : run->result.selected) ids.push_back(run->instance.element(e).id);
    *element_ids = CopyIds(ids);
    *count = ids.size();
  });
}

kn_status kn_run_trace_csv(const kn_run* run, char** csv) {
  if (MissingOutput(run) || MissingOutput(csv)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] { *csv = CopyString(kicknext::TraceCsv(run->instance, run->result)); });
}

kn_status kn_monte_carlo(const kn_instance* instance, double p, size_t trials,
                         uint64_t seed, int jobs, kn_ratio_estimate* out,
                         char** report_csv) {
  if (MissingOutput(instance) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    const kicknext::ExperimentReport report =
        kicknext::RunMonteCarloExperiment(instance->value, p, trials, seed, jobs);
    out->mean = report.ratio.mean;
    out->std_err = report.ratio.std_err;
    out->opt_weight = report.ratio.opt_weight;
    out->trials = report.ratio.trials;
    if (report_csv != nullptr) *report_csv = CopyString(kicknext::ChecksCsv(report.checks));
  });
}

kn_status kn_exact_ratio(const kn_instance* instance, double p, int padding,
                         kn_exact_result* out) {
  if (MissingOutput(instance) || MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    const kicknext::ExactResult exact = kicknext::ExactRatio(instance->value, p, padding != 0);
    out->ratio = exact.ratio;
    out->expected_weight = exact.expected_weight;
    out->opt_weight = exact.opt_weight;
    out->probability_mass = exact.probability_mass;
    out->runs = exact.runs;
  });
}

kn_status kn_verify(const kn_instance* instance, double p, size_t trials, uint64_t seed,
                    int jobs, char** csv, char** summary, int* all_passed) {
  if (MissingOutput(instance) || MissingOutput(all_passed)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    const std::vector<kicknext::LemmaCheck> checks =
        kicknext::VerifyLemmas(instance->value, p, trials, seed, jobs);
    *all_passed = kicknext::AllPassed(checks) ? 1 : 0;
    char* csv_text = csv ? CopyString(kicknext::ChecksCsv(checks)) : nullptr;
    if (summary != nullptr) {
      try {
        *summary = CopyString(kicknext::ChecksSummary(checks));
      } catch (...) {
        std::free(csv_text);
        throw;
      }
    }
    if (csv != nullptr) *csv = csv_text;
  });
}

kn_status kn_theory_params(double p, kn_theory* out) {
  if (MissingOutput(out)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    const kicknext::TheoryParams params = kicknext::ComputeTheoryParams(p);
    *out = {params.p, params.alpha, params.c, params.c_geo, kicknext::RatioLowerBound(p)};
  });
}

kn_status kn_best_p(double step, double* p, double* ratio) {
  if (MissingOutput(p) || MissingOutput(ratio)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    const kicknext::BestP best = kicknext::FindBestP(step);
    *p = best.p;
    *ratio = best.ratio;
  });
}

kn_status kn_theory_csv(double p_min, double p_max, double step, char** csv) {
  if (MissingOutput(csv)) return KN_ERR_INVALID_ARGUMENT;
  return Guard([&] {
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (!(p_min <= p_max)) throw std::invalid_argument("empty grid: p_min > p_max");
    std::ostringstream out;
    out.precision(12);
    out << "p,alpha,c,ratio_lower_bound\n";
    for (long k = 0;; ++k) {
      const double p = p_min + k * step;
      if (p > p_max + 1e-12 * step) break;
      const kicknext::TheoryParams params = kicknext::ComputeTheoryParams(p);
      out << p << ',' << params.alpha << ',' << params.c << ','
          << kicknext::RatioLowerBound(p) << '\n';
    }
    *csv = CopyString(out.str());
  });
}

}  // extern "C"
