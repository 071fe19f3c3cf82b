#pragma once

#include <string>

#include "latconv/spec_file.hpp"

namespace latconv {

struct RunOptions {
  long long prefix_n = 100'000;
  long long n_max = 1'000'000;
  long long budget = Budget::kDefault;
  long long seed = 0;
  int jobs = 1;          // task-level parallelism; never affects report bytes
  bool timings = false;  // adds wall-clock fields (breaks byte-identity)
};

struct RunResult {
  std::string json;               // rendered report document, trailing newline
  int refuted = 0;                // tasks whose claim was refuted
  int inconclusive = 0;           // undecided or precondition-failed tasks
  int errors = 0;                 // tasks that raised an error

  bool clean_exit() const { return refuted == 0 && errors == 0; }
};

/// Execute the spec's tasks in order and render the JSON report.  With
/// jobs > 1, tasks run concurrently; assembly stays in task order, so the
/// bytes are identical for every jobs value.
RunResult run(const AnalysisSpec& spec, const RunOptions& opts);

/// Run the built-in theorem corpus and render its report.
RunResult theorem_report(long long seed, int trials, const RunOptions& opts);

}  // namespace latconv
