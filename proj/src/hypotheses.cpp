#include "hypotheses.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace fgfp {

namespace {

enum Stream : std::uint64_t { kMonotone = 1, kContraction = 2, kComparability = 3, kLipschitz = 4 };

Rng stream_rng(const SamplerConfig& cfg, std::uint64_t stream) {
  return Rng(cfg.rng_seed ^ (stream * 0x9E3779B97F4A7C15ULL));
}

Point eval_at(const MapSpec& m, const char* name, const Point& a, const Point& b) {
  try {
    return m.eval(a, b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Eval) throw;
    throw Error(ErrorKind::Eval, std::string(e.what()) + " while evaluating " + name + " at " +
                                     to_string(a) + ", " + to_string(b));
  }
}

void note_monotone(MonotoneReport& rep, bool ok, const char* clause, const Point& lo,
                   const Point& hi, const Point& other, const Point& image_lo, const Point& image_hi) {
  if (ok) return;
  ++rep.violations;
  rep.verdict = Verdict::Fail;
  if (rep.counterexamples.size() < kMaxCounterexamples) {
    rep.counterexamples.push_back({clause, lo, hi, other, image_lo, image_hi});
  }
}

}  // namespace

const char* verdict_name(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

MonotoneReport check_mixed_monotone(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                    const SpaceSpec& Y, const SamplerConfig& cfg) {
  if (cfg.samples_per_check == 0) throw Error(ErrorKind::Input, "samples_per_check must be >= 1");
  Rng rng = stream_rng(cfg, kMonotone);
  MonotoneReport rep;
  const std::size_t max_attempts = cfg.samples_per_check * 20;
  for (std::size_t attempt = 0; attempt < max_attempts && rep.samples < cfg.samples_per_check;
       ++attempt) {
    auto xs = sample_ordered_pair(X, rng, cfg.comparable_pair_strategy);
    const Point y = sample_point(Y, rng);
    auto ys = sample_ordered_pair(Y, rng, cfg.comparable_pair_strategy);
    const Point x = sample_point(X, rng);
    if (!xs || !ys) continue;
    ++rep.samples;
    const auto& [x1, x2] = *xs;
    const auto& [y1, y2] = *ys;

    // x1 <= x2: F(x1,y) <= F(x2,y) and G(y,x1) >= G(y,x2).
    const Point f_x1 = eval_at(F, "F", x1, y);
    const Point f_x2 = eval_at(F, "F", x2, y);
    note_monotone(rep, X.order().leq(f_x1, f_x2), "F(x1,y) <= F(x2,y)", x1, x2, y, f_x1, f_x2);
    const Point g_x1 = eval_at(G, "G", y, x1);
    const Point g_x2 = eval_at(G, "G", y, x2);
    note_monotone(rep, Y.order().leq(g_x2, g_x1), "G(y,x1) >= G(y,x2)", x1, x2, y, g_x1, g_x2);

    // y1 <= y2: F(x,y1) >= F(x,y2) and G(y1,x) <= G(y2,x).
    const Point f_y1 = eval_at(F, "F", x, y1);
    const Point f_y2 = eval_at(F, "F", x, y2);
    note_monotone(rep, X.order().leq(f_y2, f_y1), "F(x,y1) >= F(x,y2)", y1, y2, x, f_y1, f_y2);
    const Point g_y1 = eval_at(G, "G", y1, x);
    const Point g_y2 = eval_at(G, "G", y2, x);
    note_monotone(rep, Y.order().leq(g_y1, g_y2), "G(y1,x) <= G(y2,x)", y1, y2, x, g_y1, g_y2);
  }
  if (rep.samples == 0) {
    throw Error(ErrorKind::Degenerate,
                "no comparable pairs found; the order is unusable with this sampling strategy");
  }
  return rep;
}

SeedReport check_seed(const MapSpec& F, const MapSpec& G, const SpaceSpec& X, const SpaceSpec& Y,
                      const Point& x0, const Point& y0) {
  X.require_inside(x0, "seed x0");
  Y.require_inside(y0, "seed y0");
  SeedReport rep;
  rep.fx0 = eval_at(F, "F", x0, y0);
  rep.gy0 = eval_at(G, "G", y0, x0);
  rep.x_ok = X.leq(x0, rep.fx0);
  rep.y_ok = Y.leq(rep.gy0, y0);
  rep.ok = rep.x_ok && rep.y_ok;
  return rep;
}

std::pair<ContractionTerms, ContractionTerms> contraction_terms(const MapSpec& F, const MapSpec& G,
                                                                const SpaceSpec& X,
                                                                const SpaceSpec& Y, FamilyKind kind,
                                                                const OrderedDraw& d) {
  ContractionTerms tf;
  {
    // x >= u, y <= v.
    const Point& x = d.x_hi;
    const Point& u = d.x_lo;
    const Point& y = d.y_lo;
    const Point& v = d.y_hi;
    const Point fxy = eval_at(F, "F", x, y);
    const Point fuv = eval_at(F, "F", u, v);
    tf.p = {x, y};
    tf.q = {u, v};
    tf.lhs = X.raw_distance(fxy, fuv);
    switch (kind) {
      case FamilyKind::SymHalf:
        tf.c1 = 0.5 * (X.raw_distance(x, u) + Y.raw_distance(y, v));
        tf.c2 = 0.0;
        break;
      case FamilyKind::LinAsym:
        tf.c1 = X.raw_distance(x, u);
        tf.c2 = Y.raw_distance(y, v);
        break;
      case FamilyKind::Kannan:
        tf.c1 = X.raw_distance(x, fxy);
        tf.c2 = X.raw_distance(u, fuv);
        break;
      case FamilyKind::Chatterjea:
        tf.c1 = X.raw_distance(x, fuv);
        tf.c2 = X.raw_distance(u, fxy);
        break;
    }
  }
  ContractionTerms tg;
  {
    // x <= u, y >= v.
    const Point& x = d.x_lo;
    const Point& u = d.x_hi;
    const Point& y = d.y_hi;
    const Point& v = d.y_lo;
    const Point gyx = eval_at(G, "G", y, x);
    const Point gvu = eval_at(G, "G", v, u);
    tg.p = {x, y};
    tg.q = {u, v};
    tg.lhs = Y.raw_distance(gyx, gvu);
    switch (kind) {
      case FamilyKind::SymHalf:
        tg.c1 = 0.0;
        tg.c2 = 0.5 * (Y.raw_distance(y, v) + X.raw_distance(x, u));
        break;
      case FamilyKind::LinAsym:
        tg.c1 = Y.raw_distance(y, v);
        tg.c2 = X.raw_distance(x, u);
        break;
      case FamilyKind::Kannan:
        tg.c1 = Y.raw_distance(y, gyx);
        tg.c2 = Y.raw_distance(v, gvu);
        break;
      case FamilyKind::Chatterjea:
        tg.c1 = Y.raw_distance(y, gvu);
        tg.c2 = Y.raw_distance(v, gyx);
        break;
    }
  }
  return {std::move(tf), std::move(tg)};
}

namespace {

void note_inequality(InequalityReport& rep, const ContractionTerms& t, double k, double l) {
  ++rep.samples;
  const double rhs = k * t.c1 + l * t.c2;
  if (rhs >= kRatioFloor) rep.max_ratio = std::max(rep.max_ratio, t.lhs / rhs);
  if (t.lhs > rhs + kInequalitySlack) {
    ++rep.violations;
    rep.verdict = Verdict::Fail;
    if (rep.counterexamples.size() < kMaxCounterexamples) rep.counterexamples.push_back(t);
  }
}

}  // namespace

ContractionReport check_contraction(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                    const SpaceSpec& Y, const ContractionFamily& family,
                                    const SamplerConfig& cfg) {
  const auto draws = draw_ordered_pairs(X, Y, cfg, kContraction);
  ContractionReport rep{family, {}, {}};
  rep.f.map = "F";
  rep.g.map = "G";
  for (const auto& d : draws) {
    const auto [tf, tg] = contraction_terms(F, G, X, Y, family.kind(), d);
    note_inequality(rep.f, tf, family.k(), family.l());
    note_inequality(rep.g, tg, family.k(), family.l());
  }
  return rep;
}

namespace {

// min k + l  s.t.  k, l >= 0  and  lhs_i <= k c1_i + l c2_i.
//
// For fixed k the least feasible l is a maximum of affine functions of k, so
// k + l(k) is convex and piecewise linear; golden-section search on the
// bracket where it can decrease finds the minimum.
ConstantEstimate minimise_sum(const std::vector<ContractionTerms>& terms) {
  struct Row {
    double lhs, c1, c2;
  };
  std::vector<Row> both;
  double k_floor = 0.0;
  double l_floor = 0.0;
  std::size_t used = 0;
  for (const auto& t : terms) {
    const bool has1 = t.c1 >= kRatioFloor;
    const bool has2 = t.c2 >= kRatioFloor;
    if (!has1 && !has2) continue;
    ++used;
    if (t.lhs <= 0.0) continue;
    if (has1 && has2) {
      both.push_back({t.lhs, t.c1, t.c2});
    } else if (has1) {
      k_floor = std::max(k_floor, t.lhs / t.c1);
    } else {
      l_floor = std::max(l_floor, t.lhs / t.c2);
    }
  }
  if (used == 0) throw Error(ErrorKind::Degenerate, "every sample has a vanishing right-hand side");

  auto l_of = [&](double k) {
    double l = l_floor;
    for (const Row& r : both) l = std::max(l, (r.lhs - k * r.c1) / r.c2);
    return l;
  };
  double k_hi = k_floor;
  for (const Row& r : both) k_hi = std::max(k_hi, r.lhs / r.c1);

  double a = k_floor;
  double b = k_hi;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = c + l_of(c);
  double fd = d + l_of(d);
  for (int it = 0; it < 200 && b - a > 0.0; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = c + l_of(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = d + l_of(d);
    }
  }
  double best_k = 0.5 * (a + b);
  double best = best_k + l_of(best_k);
  for (double cand : {k_floor, k_hi, a, b}) {
    const double v = cand + l_of(cand);
    if (v < best) {
      best = v;
      best_k = cand;
    }
  }
  return {best_k, l_of(best_k), used};
}

}  // namespace

ConstantEstimate estimate_constants(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                    const SpaceSpec& Y, FamilyKind kind, const SamplerConfig& cfg) {
  const auto draws = draw_ordered_pairs(X, Y, cfg, kContraction);
  std::vector<ContractionTerms> terms;
  terms.reserve(2 * draws.size());
  for (const auto& d : draws) {
    auto [tf, tg] = contraction_terms(F, G, X, Y, kind, d);
    terms.push_back(std::move(tf));
    terms.push_back(std::move(tg));
  }
  if (kind != FamilyKind::SymHalf) return minimise_sum(terms);

  ConstantEstimate est;
  for (const auto& t : terms) {
    if (t.c1 >= kRatioFloor) {
      est.k = std::max(est.k, t.lhs / t.c1);
      ++est.constraints_used;
    } else if (t.c2 >= kRatioFloor) {
      est.l = std::max(est.l, t.lhs / t.c2);
      ++est.constraints_used;
    }
  }
  if (est.constraints_used == 0) {
    throw Error(ErrorKind::Degenerate, "every sample has a vanishing right-hand side");
  }
  return est;
}

ComparabilityReport check_comparability(const SpaceSpec& X, const SpaceSpec& Y,
                                        const SamplerConfig& cfg) {
  constexpr std::size_t kRandomCandidates = 16;
  if (cfg.samples_per_check == 0) throw Error(ErrorKind::Input, "samples_per_check must be >= 1");
  Rng rng = stream_rng(cfg, kComparability);
  ComparabilityReport rep;
  for (std::size_t i = 0; i < cfg.samples_per_check; ++i) {
    const ProductPoint p{sample_point(X, rng), sample_point(Y, rng)};
    const ProductPoint q{sample_point(X, rng), sample_point(Y, rng)};
    ++rep.samples;

    std::vector<ProductPoint> candidates{p, q};
    // In the product order (u,v) <= (x,y) iff u <= x and y <= v.
    auto xl = X.order().common_lower(p.x, q.x);
    auto xu = X.order().common_upper(p.x, q.x);
    auto yl = Y.order().common_lower(p.y, q.y);
    auto yu = Y.order().common_upper(p.y, q.y);
    if (xl && yu) candidates.push_back({*xl, *yu});
    if (xu && yl) candidates.push_back({*xu, *yl});
    for (std::size_t c = 0; c < kRandomCandidates; ++c) {
      candidates.push_back({sample_point(X, rng), sample_point(Y, rng)});
    }
    const bool found = std::any_of(candidates.begin(), candidates.end(), [&](const ProductPoint& c) {
      return product_comparable(X, Y, c, p) && product_comparable(X, Y, c, q);
    });
    if (!found) {
      ++rep.failures;
      rep.verdict = Verdict::Fail;
      if (rep.failing_pairs.size() < kMaxCounterexamples) rep.failing_pairs.emplace_back(p, q);
    }
  }
  return rep;
}

LipschitzEstimate estimate_lipschitz(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                     const SpaceSpec& Y, const SamplerConfig& cfg) {
  Rng rng = stream_rng(cfg, kLipschitz);
  auto nudge = [&](const SpaceSpec& s, const Point& p) {
    const Box& box = s.sampling_box();
    std::vector<double> c(p.dim());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double r = 1e-3 * (box.upper[i] - box.lower[i]);
      c[i] = std::clamp(p[i] + rng.uniform(-r, r), box.lower[i], box.upper[i]);
    }
    return Point(std::move(c));
  };
  LipschitzEstimate est;
  for (std::size_t i = 0; i < cfg.samples_per_check; ++i) {
    const Point x = sample_point(X, rng);
    const Point y = sample_point(Y, rng);
    const Point u = nudge(X, x);
    const Point v = nudge(Y, y);
    const double d = X.raw_distance(x, u) + Y.raw_distance(y, v);
    if (d < kRatioFloor) continue;
    est.f = std::max(est.f, X.raw_distance(eval_at(F, "F", x, y), eval_at(F, "F", u, v)) / d);
    est.g = std::max(est.g, Y.raw_distance(eval_at(G, "G", y, x), eval_at(G, "G", v, u)) / d);
  }
  return est;
}

HypothesisReport audit(const ProblemSpec& problem, const SamplerConfig& cfg, bool with_estimate) {
  HypothesisReport rep{problem.family,
                       check_mixed_monotone(problem.F, problem.G, problem.X, problem.Y, cfg),
                       check_seed(problem.F, problem.G, problem.X, problem.Y, problem.seed.x,
                                  problem.seed.y),
                       check_contraction(problem.F, problem.G, problem.X, problem.Y,
                                         problem.family, cfg),
                       check_comparability(problem.X, problem.Y, cfg),
                       std::nullopt,
                       {},
                       estimate_lipschitz(problem.F, problem.G, problem.X, problem.Y, cfg)};
  if (with_estimate) {
    try {
      rep.estimate = estimate_constants(problem.F, problem.G, problem.X, problem.Y,
                                        problem.family.kind(), cfg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
      rep.estimate_error = e.what();
    }
  }
  return rep;
}

}  // namespace fgfp
