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

// C interface to the KickNext laminar-matroid secretary library.
//
// Objects are opaque handles created and destroyed through this API. Every
// fallible call returns a kn_status; on failure, kn_last_error() describes
// the problem for the calling thread until its next failing call. Strings and
// arrays handed out by the library are heap blocks the caller releases with
// kn_free(). Elements and nodes are addressed by their instance ids.

#ifndef KICKNEXT_KICKNEXT_H_
#define KICKNEXT_KICKNEXT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(KICKNEXT_BUILDING)
#define KN_API __declspec(dllexport)
#else
#define KN_API __declspec(dllimport)
#endif
#else
#define KN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kn_status {
  KN_OK = 0,
  KN_ERR_INVALID_ARGUMENT = 1,  // bad parameter, out-of-range p, unknown name
  KN_ERR_INSTANCE = 2,          // malformed or structurally invalid instance
  KN_ERR_IO = 3,                // file cannot be read or written
  KN_ERR_TOO_LARGE = 4,         // exhaustive method beyond its size guard
  KN_ERR_INTERNAL = 5
} kn_status;

typedef struct kn_instance kn_instance;
typedef struct kn_run kn_run;

KN_API const char* kn_last_error(void);
KN_API const char* kn_version(void);
KN_API void kn_free(void* block);

/* Instances */

KN_API kn_status kn_instance_parse(const char* json, kn_instance** out);
KN_API kn_status kn_instance_load(const char* path, kn_instance** out);
KN_API kn_status kn_instance_save(const kn_instance* instance, char** json_out);
KN_API kn_status kn_instance_normalize(const kn_instance* instance, kn_instance** out);
KN_API void kn_instance_destroy(kn_instance* instance);

KN_API const char* kn_instance_name(const kn_instance* instance);
KN_API size_t kn_instance_num_elements(const kn_instance* instance);
KN_API size_t kn_instance_num_nodes(const kn_instance* instance);
KN_API int64_t kn_instance_root_id(const kn_instance* instance);

typedef struct kn_gen_spec {
  const char* family;   // uniform | partition | chain | random_tree
  const char* weights;  // uniform | exponential | power_law | near_ties
  int n;
  uint64_t seed;
  double power_law_exponent;
  int k;                // uniform rank, or per-part capacity for partition
  int parts;
  int depth;
  int nodes;            // random_tree node count; 0 derives one from the seed
  int max_branching;
  const char* name;     // NULL or "" derives a name
} kn_gen_spec;

// Fills the defaults: uniform family and weights, n = 1, k = 1, parts = 2,
// depth = 3, max_branching = 3, exponent 2.
KN_API void kn_gen_spec_init(kn_gen_spec* spec);
KN_API kn_status kn_generate(const kn_gen_spec* spec, kn_instance** out);

/* Matroid */

KN_API kn_status kn_is_independent(const kn_instance* instance, const int64_t* element_ids,
                                   size_t count, int* independent);

// Optimum of the node's set (all elements), heaviest first.
KN_API kn_status kn_greedy_opt(const kn_instance* instance, int64_t node_id,
                               int64_t** element_ids, size_t* count, double* weight);
KN_API kn_status kn_brute_force_opt(const kn_instance* instance, int64_t node_id,
                                    int64_t** element_ids, size_t* count, double* weight);

/* Single runs */

KN_API kn_status kn_run_trial(const kn_instance* instance, double p, uint64_t seed,
                              int padding, int trace, kn_run** out);
KN_API void kn_run_destroy(kn_run* run);
KN_API double kn_run_weight(const kn_run* run);
KN_API double kn_run_opt_weight(const kn_run* run);
KN_API size_t kn_run_sample_size(const kn_run* run);
// SOL(U) in acceptance order.
KN_API kn_status kn_run_selected(const kn_run* run, int64_t** element_ids, size_t* count);
// step,element_id,node_id,action,evicted_id,evicted_virtual (trace runs only).
KN_API kn_status kn_run_trace_csv(const kn_run* run, char** csv);

/* Experiments */

typedef struct kn_ratio_estimate {
  double mean;
  double std_err;
  double opt_weight;
  size_t trials;
} kn_ratio_estimate;

// `report_csv` may be NULL; otherwise receives the check rows
// check_name,instance,p,value,bound_or_reference,std_err,pass.
KN_API kn_status kn_monte_carlo(const kn_instance* instance, double p, size_t trials,
                                uint64_t seed, int jobs, kn_ratio_estimate* out,
                                char** report_csv);

typedef struct kn_exact_result {
  double ratio;
  double expected_weight;
  double opt_weight;
  double probability_mass;
  size_t runs;
} kn_exact_result;

KN_API kn_status kn_exact_ratio(const kn_instance* instance, double p, int padding,
                                kn_exact_result* out);

// Runs the lemma checks. `csv` and `summary` may be NULL. `all_passed` is 1
// when no check failed (skipped and informational rows do not fail).
KN_API kn_status kn_verify(const kn_instance* instance, double p, size_t trials,
                           uint64_t seed, int jobs, char** csv, char** summary,
                           int* all_passed);

/* Closed-form analysis */

typedef struct kn_theory {
  double p;
  double alpha;
  double c;
  double c_geo;
  double ratio_lower_bound;
} kn_theory;

KN_API kn_status kn_theory_params(double p, kn_theory* out);
// Grid argmax over p = step, 2 step, ... < 1/2.
KN_API kn_status kn_best_p(double step, double* p, double* ratio);
// CSV p,alpha,c,ratio_lower_bound over p_min, p_min + step, ... <= p_max.
KN_API kn_status kn_theory_csv(double p_min, double p_max, double step, char** csv);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // KICKNEXT_KICKNEXT_H_
