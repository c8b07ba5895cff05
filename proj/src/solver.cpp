#include "solver.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"
#include "hypotheses.hpp"

namespace fgfp {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::Diverged: return "diverged";
    case SolveStatus::ResidualTooLarge: return "residual_too_large";
    case SolveStatus::EvalFailure: return "eval_failure";
  }
  return "?";
}

StepBound step_bound(const ContractionFamily& family, std::size_t n, double d1x, double d1y) {
  if (n < 1) throw Error(ErrorKind::Input, "step_bound needs n >= 1");
  const double k = family.k();
  const double l = family.l();
  const double nn = static_cast<double>(n);
  switch (family.kind()) {
    case FamilyKind::SymHalf: {
      const double scale = std::pow((k + l) / 2.0, nn - 1.0) * (d1x + d1y);
      return {k / 2.0 * scale, l / 2.0 * scale};
    }
    case FamilyKind::LinAsym: {
      const double b = std::pow(k + l, nn) * (d1x + d1y);
      return {b, b};
    }
    case FamilyKind::Kannan:
    case FamilyKind::Chatterjea:
      return {std::pow(family.ratio_x(), nn) * d1x, std::pow(family.ratio_y(), nn) * d1y};
  }
  return {0.0, 0.0};
}

StepBound tail_bound(const ContractionFamily& family, std::size_t n, double d1x, double d1y) {
  if (n < 1) throw Error(ErrorKind::Input, "tail_bound needs n >= 1");
  const double rx = family.ratio_x();
  const double ry = family.ratio_y();
  if (rx >= 1.0 || ry >= 1.0) throw Error(ErrorKind::InvalidConstants, "geometric ratio is not < 1");
  const double nn = static_cast<double>(n);
  const double k = family.k();
  const double l = family.l();
  switch (family.kind()) {
    case FamilyKind::SymHalf: {
      const double scale = std::pow(rx, nn - 1.0) / (1.0 - rx) * (d1x + d1y);
      return {k / 2.0 * scale, l / 2.0 * scale};
    }
    case FamilyKind::LinAsym: {
      const double b = std::pow(rx, nn) / (1.0 - rx) * (d1x + d1y);
      return {b, b};
    }
    case FamilyKind::Kannan:
    case FamilyKind::Chatterjea:
      return {std::pow(rx, nn) / (1.0 - rx) * d1x, std::pow(ry, nn) / (1.0 - ry) * d1y};
  }
  return {0.0, 0.0};
}

std::optional<double> uniqueness_rate(const ContractionFamily& family, std::size_t n) {
  const double nn = static_cast<double>(n);
  switch (family.kind()) {
    case FamilyKind::SymHalf:
      return std::pow(family.k() / 2.0, nn) + std::pow(family.l() / 2.0, nn);
    case FamilyKind::LinAsym:
      return 2.0 * std::pow(family.k() + family.l(), nn);
    default:
      return std::nullopt;
  }
}

std::vector<BoundViolation> verify_trace_bounds(const IterationTrace& trace,
                                                const ContractionFamily& family) {
  std::vector<BoundViolation> out;
  if (trace.step_x.empty()) return out;
  const double d1x = trace.step_x[0];
  const double d1y = trace.step_y[0];
  for (std::size_t n = 1; n < trace.step_x.size(); ++n) {
    const StepBound b = step_bound(family, n, d1x, d1y);
    if (trace.step_x[n] > b.x + kBoundSlack) out.push_back({n, 'x', trace.step_x[n], b.x});
    if (trace.step_y[n] > b.y + kBoundSlack) out.push_back({n, 'y', trace.step_y[n], b.y});
  }
  return out;
}

SolveOutcome solve(const ProblemSpec& problem, const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::Input, "tol must be positive");
  if (opts.max_iter < 1) throw Error(ErrorKind::Input, "max_iter must be >= 1");
  problem.validate();
  const SpaceSpec& X = problem.X;
  const SpaceSpec& Y = problem.Y;

  if (!opts.force) {
    const SeedReport seed = check_seed(problem.F, problem.G, X, Y, problem.seed.x, problem.seed.y);
    if (!seed.ok) {
      throw Error(ErrorKind::Hypothesis,
                  "seed condition fails: need x0 <= F(x0,y0) and G(y0,x0) <= y0 (F(x0,y0)=" +
                      to_string(seed.fx0) + ", G(y0,x0)=" + to_string(seed.gy0) + ")");
    }
  }

  SolveOutcome out;
  IterationTrace& trace = out.trace;
  FGFixedPointResult& res = out.result;
  trace.points.push_back(problem.seed);
  ProductPoint cur = problem.seed;

  bool stopped = false;
  res.status = SolveStatus::MaxIterations;
  double prev_sum = std::numeric_limits<double>::infinity();
  std::size_t growing = 0;
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    ProductPoint next;
    try {
      next.x = problem.F.eval(cur.x, cur.y);
      next.y = problem.G.eval(cur.y, cur.x);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Eval) throw;
      res.status = SolveStatus::EvalFailure;
      res.message = std::string(e.what()) + " at iteration " + std::to_string(it);
      break;
    }
    const double sx = X.raw_distance(next.x, cur.x);
    const double sy = Y.raw_distance(next.y, cur.y);
    trace.step_x.push_back(sx);
    trace.step_y.push_back(sy);
    trace.monotone_ok.push_back(X.order().leq(cur.x, next.x) && Y.order().leq(next.y, cur.y));
    const std::size_t index = trace.points.size();
    if (!X.contains(next.x)) trace.range_warnings.push_back({index, 'x', next.x});
    if (!Y.contains(next.y)) trace.range_warnings.push_back({index, 'y', next.y});
    trace.points.push_back(next);
    cur = std::move(next);
    res.iterations = it + 1;

    const double sum = sx + sy;
    if (sum < opts.tol) {
      stopped = true;
      break;
    }
    growing = sum > prev_sum ? growing + 1 : 0;
    prev_sum = sum;
    if (growing >= opts.divergence_window) {
      res.status = SolveStatus::Diverged;
      res.message = "step sum grew for " + std::to_string(growing) + " consecutive steps";
      break;
    }
  }

  if (!trace.step_x.empty()) {
    const double d1x = trace.step_x[0];
    const double d1y = trace.step_y[0];
    for (std::size_t n = 0; n < trace.step_x.size(); ++n) {
      const StepBound b = n == 0 ? StepBound{d1x, d1y} : step_bound(problem.family, n, d1x, d1y);
      trace.bound_x.push_back(b.x);
      trace.bound_y.push_back(b.y);
    }
  }

  res.x_star = cur.x;
  res.y_star = cur.y;
  res.residual_x = std::numeric_limits<double>::quiet_NaN();
  res.residual_y = std::numeric_limits<double>::quiet_NaN();
  try {
    res.residual_x = X.raw_distance(problem.F.eval(cur.x, cur.y), cur.x);
    res.residual_y = Y.raw_distance(problem.G.eval(cur.y, cur.x), cur.y);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Eval) throw;
    if (res.status != SolveStatus::EvalFailure) {
      res.status = SolveStatus::EvalFailure;
      res.message = std::string(e.what()) + " while computing residuals";
    }
    stopped = false;
  }
  if (stopped) {
    res.converged = res.residual_x + res.residual_y <= opts.tol;
    res.status = res.converged ? SolveStatus::Converged : SolveStatus::ResidualTooLarge;
  }
  res.bound_violations = verify_trace_bounds(trace, problem.family);
  return out;
}

UniquenessReport uniqueness_probe(const ProblemSpec& problem,
                                  const std::vector<ProductPoint>& extra_seeds,
                                  const SolveOptions& opts, std::size_t decay_horizon) {
  problem.validate();
  const SpaceSpec& X = problem.X;
  const SpaceSpec& Y = problem.Y;
  for (const auto& s : extra_seeds) {
    X.require_inside(s.x, "seed x0");
    Y.require_inside(s.y, "seed y0");
  }
  std::vector<ProductPoint> seeds{problem.seed};
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());

  UniquenessReport rep;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const ProductPoint& s = seeds[i];
    if (!opts.force) {
      const SeedReport sr = check_seed(problem.F, problem.G, X, Y, s.x, s.y);
      if (!sr.ok) {
        rep.aborted = true;
        rep.abort_on_seed = true;
        rep.message = "seed " + std::to_string(i) + " fails the seed condition";
        break;
      }
    }
    ProblemSpec p = problem;
    p.seed = s;
    SolveOptions o = opts;
    o.force = true;
    SolveOutcome outcome = solve(p, o);
    rep.runs.push_back({s, outcome.result});
    if (!outcome.result.converged) {
      rep.aborted = true;
      rep.abort_status = outcome.result.status;
      rep.message = "solve from seed " + std::to_string(i) + " ended with status " +
                    status_name(outcome.result.status);
      break;
    }
  }

  bool limits_agree = true;
  for (std::size_t i = 0; i < rep.runs.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.runs.size(); ++j) {
      const ProductPoint a{rep.runs[i].result.x_star, rep.runs[i].result.y_star};
      const ProductPoint b{rep.runs[j].result.x_star, rep.runs[j].result.y_star};
      const double d = product_distance(X, Y, a, b);
      rep.pairwise.push_back({i, j, d});
      if (!(d < 10.0 * opts.tol)) limits_agree = false;
    }
  }
  rep.pass = !rep.aborted && limits_agree;

  rep.rate_applicable = uniqueness_rate(problem.family, 1).has_value();
  if (!rep.rate_applicable) return rep;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    for (std::size_t j = i + 1; j < seeds.size(); ++j) {
      if (!product_comparable(X, Y, seeds[i], seeds[j])) continue;
      DecayCheck dc;
      dc.i = i;
      dc.j = j;
      dc.initial_distance = product_distance(X, Y, seeds[i], seeds[j]);
      ProductPoint a = seeds[i];
      ProductPoint b = seeds[j];
      dc.max_excess = -std::numeric_limits<double>::infinity();
      try {
        for (std::size_t n = 1; n <= decay_horizon; ++n) {
          a = iterate_pair(problem.F, problem.G, a.x, a.y, 1);
          b = iterate_pair(problem.F, problem.G, b.x, b.y, 1);
          const double observed = product_distance(X, Y, a, b);
          const double claimed = *uniqueness_rate(problem.family, n) * dc.initial_distance;
          dc.steps = n;
          dc.max_excess = std::max(dc.max_excess, observed - claimed);
          if (observed > claimed + 1e-10) {
            ++dc.violations;
            if (!dc.first_violation) dc.first_violation = n;
          }
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Eval) throw;
      }
      if (dc.steps == 0) dc.max_excess = 0.0;
      rep.decay.push_back(dc);
    }
  }
  return rep;
}

}  // namespace fgfp
