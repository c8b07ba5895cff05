#include <doctest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "problem_io.hpp"
#include "solver.hpp"

using namespace fgfp;

namespace {

ProblemSpec with_seed(ProblemSpec p, double x, double y) {
  p.seed = {Point{x}, Point{y}};
  return p;
}

ProblemSpec expanding(double k, double l) {
  SpaceSpec X = SpaceSpec::interval(-5, 5);
  SpaceSpec Y = SpaceSpec::interval(-5, 5);
  MapSpec F = MapSpec::parse("2*a1", 1, 1, 1);
  MapSpec G = MapSpec::parse("-2*a1", 1, 1, 1);
  return ProblemSpec{X, Y, F, G, ContractionFamily(FamilyKind::SymHalf, k, l), {Point{1.0}, Point{1.0}}, {}, {}};
}

}  // namespace

TEST_CASE("step bounds") {
  const ContractionFamily sym(FamilyKind::SymHalf, 2.0 / 3, 2.0 / 5);
  const StepBound b = step_bound(sym, 1, 1.0 / 3, 3.0 / 5);
  CHECK(b.x == doctest::Approx(14.0 / 45.0).epsilon(1e-15));
  CHECK(b.y == doctest::Approx((1.0 / 5) * (14.0 / 15)).epsilon(1e-15));

  const ContractionFamily kan(FamilyKind::Kannan, 1.0 / 3, 1.0 / 2);
  CHECK(step_bound(kan, 2, 1.0, 0.0).x == doctest::Approx(9.0 / 16.0).epsilon(1e-15));
  CHECK(step_bound(kan, 2, 0.0, 1.0).y == doctest::Approx(std::pow((1.0 / 3) / (1.0 / 2), 2)).epsilon(1e-15));

  const ContractionFamily ch(FamilyKind::Chatterjea, 0.25, 0.4);
  CHECK(step_bound(ch, 3, 1.0, 1.0).x == doctest::Approx(std::pow(0.4 / 0.6, 3)));
  CHECK(step_bound(ch, 3, 1.0, 1.0).y == doctest::Approx(std::pow(0.25 / 0.75, 3)));

  const ContractionFamily lin(FamilyKind::LinAsym, 0.3, 0.2);
  CHECK(step_bound(lin, 2, 0.5, 0.5).x == doctest::Approx(0.25));
  for (const auto& f : {sym, kan, ch, lin}) {
    const StepBound z = step_bound(f, 4, 0.0, 0.0);
    CHECK(z.x == 0.0);
    CHECK(z.y == 0.0);
  }
  CHECK_THROWS_AS(step_bound(sym, 0, 1, 1), Error);
}

TEST_CASE("tail bounds") {
  const ContractionFamily lin(FamilyKind::LinAsym, 0.25, 0.25);
  CHECK(tail_bound(lin, 3, 0.5, 0.5).x == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(tail_bound(lin, 3, 0.0, 0.0).x == 0.0);

  // Partial sums of the step bounds stay under the tail bound.
  const ContractionFamily fams[] = {ContractionFamily(FamilyKind::SymHalf, 2.0 / 3, 2.0 / 5),
                                    ContractionFamily(FamilyKind::LinAsym, 4.0 / 17, 3.0 / 17),
                                    ContractionFamily(FamilyKind::Kannan, 1.0 / 3, 1.0 / 2),
                                    ContractionFamily(FamilyKind::Chatterjea, 0.25, 0.25)};
  for (const auto& f : fams) {
    for (std::size_t n = 1; n <= 10; ++n) {
      double sx = 0, sy = 0;
      for (std::size_t j = n; j < n + 200; ++j) {
        sx += step_bound(f, j, 0.7, 0.3).x;
        sy += step_bound(f, j, 0.7, 0.3).y;
      }
      const StepBound t = tail_bound(f, n, 0.7, 0.3);
      CHECK(sx <= t.x * (1 + 1e-12));
      CHECK(sy <= t.y * (1 + 1e-12));
    }
  }
}

TEST_CASE("solve: ex1 and ex3") {
  const auto& e1 = *find_entry("ex1");
  const SolveOutcome o = solve(e1.problem);
  CHECK(o.result.converged);
  CHECK(o.result.residual_x + o.result.residual_y < 1e-10);
  CHECK(std::abs(o.result.x_star[0]) < 1e-9);
  CHECK(std::abs(o.result.y_star[0]) < 1e-9);
  CHECK(o.trace.step_x.size() == o.trace.points.size() - 1);
  CHECK(o.result.bound_violations.empty());

  // Trace against a hand-rolled iteration.
  const auto ref = oracle::iterate_1d([](double x, double y) { return (x - y) / 3; },
                                      [](double y, double x) { return (y - x) / 5; }, -1.0, 1.0, 10);
  for (int n = 0; n <= 10; ++n) {
    CHECK(o.trace.points[n].x[0] == doctest::Approx(ref[n].first).epsilon(1e-14));
    CHECK(o.trace.points[n].y[0] == doctest::Approx(ref[n].second).epsilon(1e-14));
  }

  const SolveOutcome o3 = solve(find_entry("ex3")->problem);
  CHECK(o3.result.converged);
  CHECK(std::abs(o3.result.x_star[0] - 4.0 / 3) + std::abs(o3.result.y_star[0] + 4.0 / 3) < 1e-8);
}

TEST_CASE("solve from the fixed point stops after one step") {
  const SolveOutcome o = solve(with_seed(find_entry("ex1")->problem, 0.0, 0.0));
  CHECK(o.result.converged);
  CHECK(o.result.iterations == 1);
  CHECK(o.result.residual_x == 0.0);
  CHECK(o.result.residual_y == 0.0);
}

TEST_CASE("solve preconditions and early termination") {
  ProblemSpec p = find_entry("ex1")->problem;
  SolveOptions bad;
  bad.tol = 0;
  CHECK_THROWS_AS(solve(p, bad), Error);
  bad.tol = 1e-10;
  bad.max_iter = 0;
  CHECK_THROWS_AS(solve(p, bad), Error);

  // F(-0.1, 5) = -1.7 < -0.1.
  try {
    solve(with_seed(p, -0.1, 5.0));
    FAIL("expected a hypothesis error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Hypothesis);
  }
  SolveOptions forced;
  forced.force = true;
  CHECK(solve(with_seed(p, -0.1, 5.0), forced).result.converged);

  SolveOptions few;
  few.max_iter = 3;
  const SolveOutcome o = solve(p, few);
  CHECK_FALSE(o.result.converged);
  CHECK(o.result.status == SolveStatus::MaxIterations);
  CHECK(o.trace.points.size() == 4);
}

TEST_CASE("divergence is detected") {
  SolveOptions forced;
  forced.force = true;
  const SolveOutcome o = solve(expanding(0.5, 0.5), forced);
  CHECK_FALSE(o.result.converged);
  CHECK(o.result.status == SolveStatus::Diverged);
  CHECK(o.result.iterations <= 60);
  CHECK_FALSE(verify_trace_bounds(o.trace, ContractionFamily(FamilyKind::SymHalf, 0.5, 0.5)).empty());
  CHECK_FALSE(o.trace.range_warnings.empty());
}

TEST_CASE("evaluation failure keeps the partial trace") {
  SpaceSpec X = SpaceSpec::interval(-5, 5);
  ProblemSpec p{X, X, MapSpec::parse("1/(a1 - 1)", 1, 1, 1), MapSpec::parse("a1", 1, 1, 1),
                ContractionFamily(FamilyKind::LinAsym, 0.1, 0.1), {Point{2.0}, Point{0.0}}, {}, {}};
  SolveOptions forced;
  forced.force = true;
  const SolveOutcome o = solve(p, forced);
  CHECK(o.result.status == SolveStatus::EvalFailure);
  CHECK_FALSE(o.result.converged);
  CHECK(o.trace.points.size() >= 2);
}

TEST_CASE("trace invariants on the corpus") {
  for (const auto& e : builtin_problems()) {
    CAPTURE(e.id);
    const SolveOutcome o = solve(e.problem);
    const auto& t = o.trace;
    CHECK(verify_trace_bounds(t, e.problem.family).empty());
    for (bool ok : t.monotone_ok) CHECK(ok);
    const double d1x = t.step_x[0], d1y = t.step_y[0];
    for (std::size_t n = 1; n < t.points.size(); ++n) {
      const StepBound tb = tail_bound(e.problem.family, n, d1x, d1y);
      for (std::size_t m = n; m < t.points.size(); ++m) {
        CHECK(product_distance(e.problem.X, e.problem.Y, t.points[m], t.points[n]) <= tb.x + tb.y + 1e-10);
      }
      CHECK(e.problem.X.leq(t.points[n].x, o.result.x_star));
    }
    // A posteriori residual estimate.
    const double r = std::max(e.problem.family.ratio_x(), e.problem.family.ratio_y());
    CHECK(o.result.residual_x + o.result.residual_y <= 1e-10 * (1 + r / (1 - r)));
    CHECK(t.bound_x[0] == d1x);
    for (std::size_t n = 2; n < t.bound_x.size(); ++n) CHECK(t.bound_x[n] <= t.bound_x[n - 1]);
  }
}

TEST_CASE("uniqueness probe") {
  const ProblemSpec& p1 = find_entry("ex1")->problem;
  SolveOptions opts;
  const UniquenessReport r = uniqueness_probe(p1, {{Point{-5.0}, Point{2.0}}, {Point{0.0}, Point{0.0}}}, opts);
  CHECK(r.pass);
  REQUIRE(r.runs.size() == 3);
  for (const auto& run : r.runs) {
    CHECK(std::abs(run.result.x_star[0]) + std::abs(run.result.y_star[0]) < 1e-9);
  }
  CHECK(r.pairwise.size() == 3);
  CHECK(r.rate_applicable);

  CHECK(uniqueness_probe(p1, {}, opts).pass);

  const ProblemSpec& p2 = find_entry("ex2")->problem;
  const UniquenessReport r2 = uniqueness_probe(p2, {{Point{-3.0}, Point{4.0}}}, opts);
  CHECK(r2.pass);

  CHECK_THROWS_AS(uniqueness_probe(p1, {{Point{1.0}, Point{1.0}}}, opts), Error);

  const UniquenessReport bad = uniqueness_probe(p1, {{Point{-0.1}, Point{5.0}}}, opts);
  CHECK_FALSE(bad.pass);
  CHECK(bad.abort_on_seed);

  // No rate claim for the Kannan family.
  CHECK_FALSE(uniqueness_probe(find_entry("ex3")->problem, {}, opts).rate_applicable);
}

TEST_CASE("the claimed symmetric-half decay rate is exceeded on ex1") {
  // Affine maps: the difference of two runs evolves linearly by [[1/3,-1/3],[-1/5,1/5]]
  // applied to (dx, dy); for (dx, dy) = (-1, 1) it scales by 8/15 each step.
  const ProblemSpec& p1 = find_entry("ex1")->problem;
  const UniquenessReport r = uniqueness_probe(p1, {{Point{-2.0}, Point{2.0}}}, {});
  REQUIRE(r.decay.size() == 1);
  const DecayCheck& d = r.decay[0];
  CHECK(d.initial_distance == 2.0);
  REQUIRE(d.first_violation);
  CHECK(*d.first_violation == 2);
  double dx = -1, dy = 1;
  for (int n = 1; n <= 2; ++n) {
    const double nx = (dx - dy) / 3, ny = (dy - dx) / 5;
    dx = nx;
    dy = ny;
  }
  const double observed = std::abs(dx) + std::abs(dy);
  CHECK(observed == doctest::Approx(2 * std::pow(8.0 / 15, 2)));
  CHECK(observed > (std::pow(1.0 / 3, 2) + std::pow(1.0 / 5, 2)) * 2 + 1e-10);
  CHECK(r.pass);
}

TEST_CASE("affine problems match a direct linear solve") {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 15; ++t) {
    const oracle::AffinePair ap = oracle::random_affine(gen, 0.5 + 0.4 * (t % 3) / 2.0);
    REQUIRE(ap.spectral_radius() < 1.0);
    const ProblemSpec p = parse_problem(oracle::problem_json(ap), "affine").problem;
    const SolveOutcome o = solve(p);
    REQUIRE(o.result.converged);
    const Eigen::VectorXd ref = ap.fixed_point();
    double err = 0;
    for (int i = 0; i < ap.m(); ++i) err += std::abs(o.result.x_star[i] - ref(i));
    for (int i = 0; i < ap.n(); ++i) err += std::abs(o.result.y_star[i] - ref(ap.m() + i));
    CHECK(err <= 1e-8);
    CHECK(o.result.bound_violations.empty());
    for (bool ok : o.trace.monotone_ok) CHECK(ok);
  }
}
