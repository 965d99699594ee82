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

// Command-line front end. Talks to the library only through its C API.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kicknext/kicknext.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct InstanceDeleter {
  void operator()(kn_instance* instance) const { kn_instance_destroy(instance); }
};
using InstancePtr = std::unique_ptr<kn_instance, InstanceDeleter>;

struct RunDeleter {
  void operator()(kn_run* run) const { kn_run_destroy(run); }
};
using RunPtr = std::unique_ptr<kn_run, RunDeleter>;

struct FreeDeleter {
  void operator()(void* block) const { kn_free(block); }
};
using CString = std::unique_ptr<char, FreeDeleter>;
using IdArray = std::unique_ptr<int64_t, FreeDeleter>;

// Carries a library failure out to main().
struct LibraryError {
  kn_status status;
  std::string message;
};

void Check(kn_status status) {
  if (status != KN_OK) throw LibraryError{status, kn_last_error()};
}

InstancePtr Load(const std::string& path) {
  kn_instance* raw = nullptr;
  Check(kn_instance_load(path.c_str(), &raw));
  return InstancePtr(raw);
}

std::string Timestamp() {
  std::time_t now = std::time(nullptr);
  char buffer[64];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buffer + "\n";
}

// Writes to `path`, or to stdout when it is empty.
void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw LibraryError{KN_ERR_IO, "cannot write " + path};
}

std::string JoinIds(const int64_t* ids, size_t count) {
  std::ostringstream out;
  for (size_t j = 0; j < count; ++j) out << (j ? " " : "") << ids[j];
  return out.str();
}

std::string Number(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KickNext laminar matroid secretary toolkit"};
  app.require_subcommand(1);
  bool timestamp = false;
  app.add_flag("--timestamp", timestamp, "Prefix CSV output with a generation timestamp");

  // gen
  kn_gen_spec spec;
  kn_gen_spec_init(&spec);
  std::string family = "uniform", weights = "uniform", gen_output, gen_name;
  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", family, "uniform | partition | chain | random_tree")->required();
  gen->add_option("--n", spec.n, "Number of elements")->required();
  gen->add_option("--k", spec.k, "Rank (uniform) or per-part capacity (partition)");
  gen->add_option("--parts", spec.parts, "Number of parts (partition)");
  gen->add_option("--depth", spec.depth, "Chain depth (chain)");
  gen->add_option("--nodes", spec.nodes, "Node count (random_tree; 0 = from seed)");
  gen->add_option("--branching", spec.max_branching, "Maximum fan-out (random_tree)");
  gen->add_option("--weights", weights, "uniform | exponential | power_law | near_ties");
  gen->add_option("--exponent", spec.power_law_exponent, "Power-law exponent");
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--name", gen_name, "Instance name");
  gen->add_option("-o,--output", gen_output, "Output file (default stdout)");

  // opt
  std::string opt_file;
  int64_t opt_node = 0;
  CLI::App* opt = app.add_subcommand("opt", "Report the optimum of a node's set");
  opt->add_option("file", opt_file, "Instance file")->required();
  CLI::Option* opt_node_flag = opt->add_option("--node", opt_node, "Node id (default root)");

  // run
  std::string run_file, run_output;
  double run_p = 0.08;
  uint64_t run_seed = 0;
  bool run_trace = false, run_no_padding = false;
  CLI::App* run = app.add_subcommand("run", "Run the algorithm on one seeded trial");
  run->add_option("file", run_file, "Instance file")->required();
  run->add_option("--p", run_p, "Selection-phase probability");
  run->add_option("--seed", run_seed, "Trial seed");
  run->add_flag("--trace", run_trace, "Emit the per-node event trace as CSV");
  run->add_flag("--no-padding", run_no_padding, "Do not pad reference sets");
  run->add_option("-o,--output", run_output, "Trace output file (default stdout)");

  // montecarlo
  std::string mc_file, mc_csv;
  double mc_p = 0.08;
  size_t mc_trials = 100000;
  uint64_t mc_seed = 0;
  int mc_jobs = 1;
  CLI::App* mc = app.add_subcommand("montecarlo", "Estimate the competitive ratio");
  mc->add_option("file", mc_file, "Instance file")->required();
  mc->add_option("--p", mc_p, "Selection-phase probability");
  mc->add_option("--trials", mc_trials, "Number of trials")->check(CLI::PositiveNumber);
  mc->add_option("--seed", mc_seed, "Master seed");
  mc->add_option("--jobs", mc_jobs, "Worker threads")->check(CLI::PositiveNumber);
  mc->add_option("--csv,-o", mc_csv, "CSV report file");

  // exact
  std::string exact_file;
  double exact_p = 0.08;
  bool exact_no_padding = false;
  CLI::App* exact = app.add_subcommand("exact", "Exact expected ratio by enumeration");
  exact->add_option("file", exact_file, "Instance file (at most 8 elements)")->required();
  exact->add_option("--p", exact_p, "Selection-phase probability");
  exact->add_flag("--no-padding", exact_no_padding, "Do not pad reference sets");

  // theory
  double theory_p = 0.08, p_min = 0.01, p_max = 0.49, step = 0.01;
  std::string theory_csv;
  CLI::App* theory = app.add_subcommand("theory", "Evaluate the analytical bounds");
  CLI::Option* theory_p_flag = theory->add_option("--p", theory_p, "Single p");
  CLI::Option* p_min_flag = theory->add_option("--p-min", p_min, "Grid start");
  CLI::Option* p_max_flag = theory->add_option("--p-max", p_max, "Grid end");
  CLI::Option* step_flag = theory->add_option("--step", step, "Grid step");
  theory_p_flag->excludes(p_min_flag)->excludes(p_max_flag)->excludes(step_flag);
  theory->add_option("--csv,-o", theory_csv, "CSV output file (default stdout)");

  // verify
  std::string verify_file, verify_csv;
  double verify_p = 0.08;
  size_t verify_trials = 100000;
  uint64_t verify_seed = 0;
  int verify_jobs = 1;
  CLI::App* verify = app.add_subcommand("verify", "Check the lemmas on an instance");
  verify->add_option("file", verify_file, "Instance file")->required();
  verify->add_option("--p", verify_p, "Selection-phase probability");
  verify->add_option("--trials", verify_trials, "Sampled trials for statistical checks");
  verify->add_option("--seed", verify_seed, "Master seed");
  verify->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--csv,-o", verify_csv, "CSV report file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  const std::string stamp = timestamp ? Timestamp() : std::string();

  try {
    if (*gen) {
      spec.family = family.c_str();
      spec.weights = weights.c_str();
      spec.name = gen_name.empty() ? nullptr : gen_name.c_str();
      kn_instance* raw = nullptr;
      Check(kn_generate(&spec, &raw));
      InstancePtr instance(raw);
      char* json = nullptr;
      Check(kn_instance_save(instance.get(), &json));
      CString text(json);
      Emit(gen_output, text.get());
      return kExitOk;
    }

    if (*opt) {
      InstancePtr instance = Load(opt_file);
      const int64_t node = *opt_node_flag ? opt_node : kn_instance_root_id(instance.get());
      int64_t* ids = nullptr;
      size_t count = 0;
      double weight = 0.0;
      Check(kn_greedy_opt(instance.get(), node, &ids, &count, &weight));
      IdArray greedy(ids);
      std::cout << "node " << node << ": " << count << " elements, weight "
                << Number(weight) << "\n"
                << "elements (heaviest first): " << JoinIds(greedy.get(), count) << "\n";
      kn_status status = kn_brute_force_opt(instance.get(), node, &ids, &count, &weight);
      if (status == KN_ERR_TOO_LARGE) {
        std::cout << "brute force skipped (set too large)\n";
        return kExitOk;
      }
      Check(status);
      IdArray brute(ids);
      std::cout << "brute force " << (JoinIds(brute.get(), count) ==
                                              JoinIds(greedy.get(), count)
                                          ? "agrees"
                                          : "DISAGREES")
                << "\n";
      return kExitOk;
    }

    if (*run) {
      InstancePtr instance = Load(run_file);
      kn_run* raw = nullptr;
      Check(kn_run_trial(instance.get(), run_p, run_seed, run_no_padding ? 0 : 1,
                         run_trace ? 1 : 0, &raw));
      RunPtr result(raw);
      int64_t* ids = nullptr;
      size_t count = 0;
      Check(kn_run_selected(result.get(), &ids, &count));
      IdArray selected(ids);
      const double weight = kn_run_weight(result.get());
      const double opt_weight = kn_run_opt_weight(result.get());
      std::ostream& summary = run_trace && run_output.empty() ? std::cerr : std::cout;
      summary << "sample size " << kn_run_sample_size(result.get()) << "\n"
              << "selected: " << JoinIds(selected.get(), count) << "\n"
              << "weight " << Number(weight) << " of OPT " << Number(opt_weight)
              << " (ratio " << Number(weight / opt_weight) << ")\n";
      if (run_trace) {
        char* csv = nullptr;
        Check(kn_run_trace_csv(result.get(), &csv));
        CString text(csv);
        Emit(run_output, stamp + text.get());
      }
      return kExitOk;
    }

    if (*mc) {
      InstancePtr instance = Load(mc_file);
      kn_ratio_estimate estimate;
      char* csv = nullptr;
      Check(kn_monte_carlo(instance.get(), mc_p, mc_trials, mc_seed, mc_jobs, &estimate,
                           &csv));
      CString text(csv);
      if (mc_csv.empty()) {
        std::cout << stamp << text.get();
      } else {
        Emit(mc_csv, stamp + text.get());
        std::cout << "ratio " << Number(estimate.mean) << " +- "
                  << Number(estimate.std_err) << " over " << estimate.trials
                  << " trials (OPT " << Number(estimate.opt_weight) << ")\n";
      }
      return kExitOk;
    }

    if (*exact) {
      InstancePtr instance = Load(exact_file);
      kn_exact_result result;
      Check(kn_exact_ratio(instance.get(), exact_p, exact_no_padding ? 0 : 1, &result));
      std::cout << "exact_ratio " << Number(result.ratio) << "\n"
                << "expected_weight " << Number(result.expected_weight) << "\n"
                << "opt_weight " << Number(result.opt_weight) << "\n"
                << "probability_mass " << Number(result.probability_mass) << "\n"
                << "runs " << result.runs << "\n";
      return kExitOk;
    }

    if (*theory) {
      char* csv = nullptr;
      if (*theory_p_flag || !(*p_min_flag || *p_max_flag || *step_flag)) {
        Check(kn_theory_csv(theory_p, theory_p, 1.0, &csv));
      } else {
        Check(kn_theory_csv(p_min, p_max, step, &csv));
      }
      CString text(csv);
      Emit(theory_csv, stamp + text.get());
      return kExitOk;
    }

    if (*verify) {
      InstancePtr instance = Load(verify_file);
      char* csv = nullptr;
      char* summary = nullptr;
      int passed = 0;
      Check(kn_verify(instance.get(), verify_p, verify_trials, verify_seed, verify_jobs,
                      verify_csv.empty() ? nullptr : &csv, &summary, &passed));
      CString csv_text(csv);
      CString summary_text(summary);
      if (!verify_csv.empty()) Emit(verify_csv, stamp + csv_text.get());
      std::cout << summary_text.get();
      return passed ? kExitOk : kExitCheckFailed;
    }
  } catch (const LibraryError& err) {
    std::cerr << "error: " << err.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
