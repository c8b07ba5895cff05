#pragma once

// Command implementations shared by the C API and the CLI. Each command
// produces a JSON report and an exit code:
//   0 success, 1 input error, 2 hypothesis failure, 3 non-convergence.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "hypotheses.hpp"
#include "problem.hpp"
#include "solver.hpp"

namespace fgfp {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitHypothesis = 2, kExitNotConverged = 3 };

struct RunOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  SamplerConfig sampler;
  bool force = false;
  bool timing = false;  // wall-clock timing breaks byte-identical reports
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::ordered_json report;
  std::string trace_csv;  // solve only
  std::optional<SolveOutcome> outcome;
};

CommandResult run_check(const ProblemSpec& problem, const RunOptions& opts);
CommandResult run_solve(const ProblemSpec& problem, const RunOptions& opts);
CommandResult run_unique(const ProblemSpec& problem, const std::vector<ProductPoint>& seeds,
                         const RunOptions& opts);
/// Solves every built-in entry; an entry passes when its solve exits 0 and the
/// limit is within 1e-8 of the declared fixed point.
CommandResult run_corpus_all(const RunOptions& opts);

nlohmann::ordered_json hypothesis_json(const HypothesisReport& rep, const SamplerConfig& cfg);
std::string trace_csv(const IterationTrace& trace);

/// Maps an escaped core error to its exit code.
int exit_code_for(ErrorKind kind);

}  // namespace fgfp
