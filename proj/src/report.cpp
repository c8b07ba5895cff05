#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "corpus.hpp"
#include "problem_io.hpp"

namespace fgfp {

using ojson = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

ojson pair_json(const ProductPoint& p) { return {{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

ojson family_json(const ContractionFamily& f) {
  return {{"kind", family_name(f.kind())}, {"k", f.k()}, {"l", f.l()}};
}

ojson inequality_json(const InequalityReport& r, const ContractionFamily& f) {
  ojson ce = ojson::array();
  for (const auto& t : r.counterexamples) {
    ce.push_back({{"p", pair_json(t.p)},
                  {"q", pair_json(t.q)},
                  {"lhs", t.lhs},
                  {"rhs", f.k() * t.c1 + f.l() * t.c2},
                  {"c1", t.c1},
                  {"c2", t.c2}});
  }
  return {{"verdict", verdict_name(r.verdict)},
          {"samples", r.samples},
          {"violations", r.violations},
          {"max_ratio", number_json(r.max_ratio)},
          {"counterexamples", ce}};
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SolveOptions solve_options(const RunOptions& o) {
  SolveOptions s;
  s.tol = o.tol;
  s.max_iter = o.max_iter;
  s.force = o.force;
  return s;
}

ojson options_json(const RunOptions& o) {
  return {{"tol", o.tol},
          {"max_iter", o.max_iter},
          {"rng_seed", o.sampler.rng_seed},
          {"samples_per_check", o.sampler.samples_per_check},
          {"force", o.force}};
}

ojson solve_json(const ProblemSpec& problem, const SolveOutcome& out) {
  const FGFixedPointResult& r = out.result;
  const IterationTrace& t = out.trace;
  ojson j;
  j["status"] = status_name(r.status);
  j["converged"] = r.converged;
  if (!r.message.empty()) j["message"] = r.message;
  j["iterations"] = r.iterations;
  j["limit"] = {{"x", to_json(r.x_star)}, {"y", to_json(r.y_star)}};
  j["residual_x"] = number_json(r.residual_x);
  j["residual_y"] = number_json(r.residual_y);
  j["residual"] = number_json(r.residual_x + r.residual_y);
  if (!t.step_x.empty()) j["first_step"] = {{"d1x", t.step_x[0]}, {"d1y", t.step_y[0]}};
  j["monotone_ok"] = std::all_of(t.monotone_ok.begin(), t.monotone_ok.end(), [](bool b) { return b; });
  ojson warn = ojson::array();
  for (const auto& w : t.range_warnings) {
    if (warn.size() >= kMaxCounterexamples) break;
    warn.push_back({{"n", w.n}, {"component", std::string(1, w.component)}, {"point", to_json(w.point)}});
  }
  j["range_warnings"] = warn;
  j["range_warning_count"] = t.range_warnings.size();
  if (problem.declared_fixed_point) {
    const double d = product_distance(problem.X, problem.Y, {r.x_star, r.y_star},
                                      *problem.declared_fixed_point);
    j["declared_fixed_point"] = pair_json(*problem.declared_fixed_point);
    j["distance_to_declared"] = number_json(d);
  }
  return j;
}

ojson bounds_json(const SolveOutcome& out) {
  ojson v = ojson::array();
  for (const auto& b : out.result.bound_violations) {
    v.push_back({{"n", b.n}, {"component", std::string(1, b.component)}, {"step", b.step}, {"bound", b.bound}});
  }
  return {{"ok", out.result.bound_violations.empty()}, {"slack", kBoundSlack}, {"violations", v}};
}

void append_number(std::string& s, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Hypothesis:
    case ErrorKind::Degenerate:
      return kExitHypothesis;
    case ErrorKind::Eval:
      return kExitNotConverged;
    default:
      return kExitInput;
  }
}

ojson hypothesis_json(const HypothesisReport& rep, const SamplerConfig& cfg) {
  ojson j;
  j["sampled"] = true;
  j["rng_seed"] = cfg.rng_seed;
  j["samples_per_check"] = cfg.samples_per_check;

  ojson mm;
  mm["verdict"] = verdict_name(rep.mixed_monotone.verdict);
  mm["samples"] = rep.mixed_monotone.samples;
  mm["violations"] = rep.mixed_monotone.violations;
  ojson mce = ojson::array();
  for (const auto& c : rep.mixed_monotone.counterexamples) {
    mce.push_back({{"clause", c.clause},
                   {"lo", to_json(c.lo)},
                   {"hi", to_json(c.hi)},
                   {"other", to_json(c.other)},
                   {"image_lo", to_json(c.image_lo)},
                   {"image_hi", to_json(c.image_hi)}});
  }
  mm["counterexamples"] = mce;
  j["mixed_monotone"] = mm;

  j["seed"] = {{"verdict", rep.seed.ok ? "PASS" : "FAIL"},
               {"x_ok", rep.seed.x_ok},
               {"y_ok", rep.seed.y_ok},
               {"F_x0_y0", to_json(rep.seed.fx0)},
               {"G_y0_x0", to_json(rep.seed.gy0)}};

  j["contraction"] = {{"family", family_json(rep.family)},
                      {"verdict", verdict_name(rep.contraction.verdict())},
                      {"F", inequality_json(rep.contraction.f, rep.family)},
                      {"G", inequality_json(rep.contraction.g, rep.family)}};

  if (rep.estimate) {
    j["estimated_constants"] = {{"k", rep.estimate->k},
                                {"l", rep.estimate->l},
                                {"constraints_used", rep.estimate->constraints_used}};
  } else if (!rep.estimate_error.empty()) {
    j["estimated_constants"] = {{"error", rep.estimate_error}};
  }

  ojson fp = ojson::array();
  for (const auto& [a, b] : rep.comparability.failing_pairs) fp.push_back({pair_json(a), pair_json(b)});
  j["comparability"] = {{"verdict", verdict_name(rep.comparability.verdict)},
                        {"informational", true},
                        {"samples", rep.comparability.samples},
                        {"failures", rep.comparability.failures},
                        {"failing_pairs", fp}};
  j["lipschitz"] = {{"informational", true},
                    {"F", number_json(rep.lipschitz.f)},
                    {"G", number_json(rep.lipschitz.g)}};
  j["existence_ok"] = rep.existence_ok();
  return j;
}

std::string trace_csv(const IterationTrace& t) {
  std::string s = "n";
  const std::size_t dx = t.points.empty() ? 0 : t.points[0].x.dim();
  const std::size_t dy = t.points.empty() ? 0 : t.points[0].y.dim();
  for (std::size_t i = 1; i <= dx; ++i) s += ",x" + std::to_string(i);
  for (std::size_t i = 1; i <= dy; ++i) s += ",y" + std::to_string(i);
  s += ",step_x,step_y,bound_x,bound_y,monotone_ok\n";
  for (std::size_t n = 0; n < t.points.size(); ++n) {
    s += std::to_string(n);
    for (double c : t.points[n].x.coords()) {
      s += ',';
      append_number(s, c);
    }
    for (double c : t.points[n].y.coords()) {
      s += ',';
      append_number(s, c);
    }
    if (n < t.step_x.size()) {
      for (double v : {t.step_x[n], t.step_y[n], t.bound_x[n], t.bound_y[n]}) {
        s += ',';
        append_number(s, v);
      }
      s += t.monotone_ok[n] ? ",true" : ",false";
    } else {
      s += ",,,,,";
    }
    s += '\n';
  }
  return s;
}

CommandResult run_check(const ProblemSpec& problem, const RunOptions& opts) {
  const auto t0 = Clock::now();
  CommandResult res;
  const HypothesisReport rep = audit(problem, opts.sampler, true);
  res.report["schema"] = 1;
  res.report["command"] = "check";
  res.report["options"] = options_json(opts);
  res.report["hypotheses"] = hypothesis_json(rep, opts.sampler);
  res.report["verdict"] = rep.existence_ok() ? "PASS" : "FAIL";
  res.exit_code = rep.existence_ok() ? kExitOk : kExitHypothesis;
  if (opts.timing) res.report["timing"] = {{"seconds", seconds_since(t0)}};
  return res;
}

CommandResult run_solve(const ProblemSpec& problem, const RunOptions& opts) {
  const auto t0 = Clock::now();
  CommandResult res;
  const HypothesisReport rep = audit(problem, opts.sampler, false);
  ojson& j = res.report;
  j["schema"] = 1;
  j["command"] = "solve";
  j["options"] = options_json(opts);
  j["hypotheses"] = hypothesis_json(rep, opts.sampler);

  if (!rep.existence_ok() && !opts.force) {
    j["solve"] = nullptr;
    j["bounds"] = nullptr;
    j["verdict"] = "HYPOTHESIS_FAIL";
    res.exit_code = kExitHypothesis;
  } else {
    SolveOutcome out = solve(problem, solve_options(opts));
    j["solve"] = solve_json(problem, out);
    j["bounds"] = bounds_json(out);
    if (!out.result.converged) {
      res.exit_code = kExitNotConverged;
      j["verdict"] = "NOT_CONVERGED";
    } else if (!out.result.bound_violations.empty()) {
      res.exit_code = kExitHypothesis;
      j["verdict"] = "BOUND_VIOLATION";
    } else {
      res.exit_code = kExitOk;
      j["verdict"] = "CONVERGED";
    }
    res.trace_csv = trace_csv(out.trace);
    res.outcome = std::move(out);
  }
  if (opts.timing) j["timing"] = {{"seconds", seconds_since(t0)}};
  return res;
}

CommandResult run_unique(const ProblemSpec& problem, const std::vector<ProductPoint>& seeds,
                         const RunOptions& opts) {
  const auto t0 = Clock::now();
  CommandResult res;
  const UniquenessReport rep = uniqueness_probe(problem, seeds, solve_options(opts));
  ojson& j = res.report;
  j["schema"] = 1;
  j["command"] = "unique";
  j["options"] = options_json(opts);

  ojson runs = ojson::array();
  for (const auto& r : rep.runs) {
    runs.push_back({{"seed", pair_json(r.seed)},
                    {"status", status_name(r.result.status)},
                    {"iterations", r.result.iterations},
                    {"limit", {{"x", to_json(r.result.x_star)}, {"y", to_json(r.result.y_star)}}},
                    {"residual", number_json(r.result.residual_x + r.result.residual_y)}});
  }
  j["seed_count"] = seeds.size() + 1;
  j["runs"] = runs;
  ojson pw = ojson::array();
  for (const auto& d : rep.pairwise) pw.push_back({{"i", d.i}, {"j", d.j}, {"distance", d.distance}});
  j["pairwise"] = pw;
  j["agreement_threshold"] = 10.0 * opts.tol;

  ojson decay = ojson::array();
  for (const auto& d : rep.decay) {
    ojson e = {{"i", d.i},
               {"j", d.j},
               {"initial_distance", d.initial_distance},
               {"steps", d.steps},
               {"violations", d.violations},
               {"max_excess", number_json(d.max_excess)},
               {"ok", d.ok()}};
    if (d.first_violation) e["first_violation"] = *d.first_violation;
    decay.push_back(e);
  }
  j["decay"] = {{"applicable", rep.rate_applicable}, {"ok", rep.decay_ok()}, {"checks", decay}};
  if (rep.aborted) j["aborted"] = {{"message", rep.message}};
  j["verdict"] = rep.pass ? "PASS" : "FAIL";

  if (rep.pass) {
    res.exit_code = kExitOk;
  } else if (rep.abort_on_seed) {
    res.exit_code = kExitHypothesis;
  } else if (rep.aborted) {
    res.exit_code = kExitNotConverged;
  } else {
    res.exit_code = kExitHypothesis;
  }
  if (opts.timing) j["timing"] = {{"seconds", seconds_since(t0)}};
  return res;
}

CommandResult run_corpus_all(const RunOptions& opts) {
  const auto t0 = Clock::now();
  std::vector<const CorpusEntry*> entries;
  for (const auto& e : builtin_problems()) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(),
            [](const CorpusEntry* a, const CorpusEntry* b) { return a->id < b->id; });

  RunOptions inner = opts;
  inner.timing = false;
  CommandResult res;
  ojson list = ojson::array();
  bool all = true;
  int worst = kExitOk;
  for (const CorpusEntry* e : entries) {
    CommandResult one = run_solve(e->problem, inner);
    ojson item;
    item["id"] = e->id;
    item["exit_code"] = one.exit_code;
    item["verdict"] = one.report["verdict"];
    bool pass = one.exit_code == kExitOk;
    if (one.outcome) {
      const auto& r = one.outcome->result;
      const double d = product_distance(e->problem.X, e->problem.Y, {r.x_star, r.y_star},
                                        *e->problem.declared_fixed_point);
      item["limit"] = {{"x", to_json(r.x_star)}, {"y", to_json(r.y_star)}};
      item["iterations"] = r.iterations;
      item["residual"] = number_json(r.residual_x + r.residual_y);
      item["distance_to_declared"] = number_json(d);
      item["bound_violations"] = r.bound_violations.size();
      pass = pass && d <= 1e-8;
    }
    item["pass"] = pass;
    item["report"] = one.report;
    list.push_back(item);
    if (!pass) {
      all = false;
      worst = std::max(worst, one.exit_code == kExitOk ? int(kExitNotConverged) : one.exit_code);
    }
  }
  res.report["schema"] = 1;
  res.report["command"] = "corpus run-all";
  res.report["options"] = options_json(opts);
  res.report["entries"] = list;
  res.report["pass"] = all;
  res.exit_code = worst;
  if (opts.timing) res.report["timing"] = {{"seconds", seconds_since(t0)}};
  return res;
}

}  // namespace fgfp
