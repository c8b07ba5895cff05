#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "problem.hpp"

namespace fgfp {

inline constexpr double kBoundSlack = 1e-12;

struct RangeWarning {
  std::size_t n;   // index of the offending point in the trace
  char component;  // 'x' or 'y'
  Point point;
};

/// Transcript of x_{n+1} = F(x_n, y_n), y_{n+1} = G(y_n, x_n).
///
/// step_x[n] = d_X(x_{n+1}, x_n); bound_x[n] is the family's a priori bound
/// on that step (bound_x[0] is d_X(x_1, x_0) itself). monotone_ok[n] records
/// x_n <= x_{n+1} and y_{n+1} <= y_n.
struct IterationTrace {
  std::vector<ProductPoint> points;
  std::vector<double> step_x;
  std::vector<double> step_y;
  std::vector<double> bound_x;
  std::vector<double> bound_y;
  std::vector<bool> monotone_ok;
  std::vector<RangeWarning> range_warnings;
};

struct BoundViolation {
  std::size_t n;
  char component;  // 'x' or 'y'
  double step;
  double bound;
};

enum class SolveStatus { Converged, MaxIterations, Diverged, ResidualTooLarge, EvalFailure };
const char* status_name(SolveStatus s);

struct FGFixedPointResult {
  Point x_star;
  Point y_star;
  double residual_x = 0.0;  // d_X(F(x*, y*), x*)
  double residual_y = 0.0;  // d_Y(G(y*, x*), y*)
  std::size_t iterations = 0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxIterations;
  std::string message;
  std::vector<BoundViolation> bound_violations;
};

struct SolveOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  bool force = false;  // skip the seed-condition precondition
  std::size_t divergence_window = 50;
};

struct SolveOutcome {
  IterationTrace trace;
  FGFixedPointResult result;
};

/// Iterates from the problem seed until the step sum drops below tol, the
/// iteration cap is hit, or the step sum grows for divergence_window
/// consecutive steps. Throws Error(Hypothesis) when the seed condition fails
/// and force is off. Evaluation failures end the run with the partial trace.
SolveOutcome solve(const ProblemSpec& problem, const SolveOptions& opts = {});

struct StepBound {
  double x;
  double y;
};

/// Bound on (d_X(x_{n+1}, x_n), d_Y(y_{n+1}, y_n)) for n >= 1 from
/// d1x = d_X(x_1, x_0) and d1y = d_Y(y_1, y_0).
StepBound step_bound(const ContractionFamily& family, std::size_t n, double d1x, double d1y);

/// Geometric-series bound on d_X(x_m, x_n) and d_Y(y_m, y_n) for all m >= n >= 1.
StepBound tail_bound(const ContractionFamily& family, std::size_t n, double d1x, double d1y);

/// Steps exceeding their bound by more than kBoundSlack, for n >= 1.
std::vector<BoundViolation> verify_trace_bounds(const IterationTrace& trace,
                                                const ContractionFamily& family);

/// Decay rate r(n) with d(F^n(s1),F^n(s2)) + d(G^n(s1),G^n(s2)) <= r(n) d(s1,s2)
/// claimed for comparable seeds; nullopt for families without such a claim.
std::optional<double> uniqueness_rate(const ContractionFamily& family, std::size_t n);

struct SeedRun {
  ProductPoint seed;
  FGFixedPointResult result;
};

struct LimitDistance {
  std::size_t i;
  std::size_t j;
  double distance;
};

struct DecayCheck {
  std::size_t i;
  std::size_t j;
  double initial_distance = 0.0;
  std::size_t steps = 0;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation;
  double max_excess = 0.0;  // max of observed - rate * D0 over checked n
  bool ok() const { return violations == 0; }
};

struct UniquenessReport {
  std::vector<SeedRun> runs;
  std::vector<LimitDistance> pairwise;
  std::vector<DecayCheck> decay;
  bool rate_applicable = false;
  bool aborted = false;
  SolveStatus abort_status = SolveStatus::Converged;
  bool abort_on_seed = false;  // aborted because a seed failed its condition
  std::string message;
  bool pass = false;  // all runs converged and all limits within 10 * tol
  bool decay_ok() const {
    for (const auto& d : decay)
      if (!d.ok()) return false;
    return true;
  }
};

/// Solves from the primary seed and every extra seed, compares limits, and
/// for comparable seed pairs checks the family's decay rate for
/// n = 1..decay_horizon.
UniquenessReport uniqueness_probe(const ProblemSpec& problem,
                                  const std::vector<ProductPoint>& extra_seeds,
                                  const SolveOptions& opts, std::size_t decay_horizon = 40);

}  // namespace fgfp
