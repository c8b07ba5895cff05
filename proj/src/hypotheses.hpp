#pragma once

// Sampled audits of the existence hypotheses: mixed monotonicity, the seed
// condition, the contraction inequality of each family, and the
// comparability condition used for uniqueness. Verdicts are evidence from a
// deterministic sample stream, not proofs.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "problem.hpp"
#include "sampling.hpp"

namespace fgfp {

enum class Verdict { Pass, Fail };
const char* verdict_name(Verdict v);

inline constexpr std::size_t kMaxCounterexamples = 10;
inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kRatioFloor = 1e-14;

struct MonotoneCounterexample {
  std::string clause;  // e.g. "F(x1,y) <= F(x2,y)"
  Point lo;            // the smaller argument of the ordered pair
  Point hi;
  Point other;         // the argument held fixed
  Point image_lo;      // map value at lo
  Point image_hi;      // map value at hi
};

struct MonotoneReport {
  Verdict verdict = Verdict::Pass;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::vector<MonotoneCounterexample> counterexamples;
};

struct SeedReport {
  bool ok = false;
  bool x_ok = false;  // x0 <= F(x0, y0)
  bool y_ok = false;  // G(y0, x0) <= y0
  Point fx0;
  Point gy0;
};

/// One evaluated contraction sample: lhs <= k*c1 + l*c2 is the inequality.
struct ContractionTerms {
  ProductPoint p;  // (x, y) for F; (y, x) is passed to G
  ProductPoint q;  // (u, v)
  double lhs = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

struct InequalityReport {
  std::string map;  // "F" or "G"
  Verdict verdict = Verdict::Pass;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // over samples with rhs >= kRatioFloor
  std::vector<ContractionTerms> counterexamples;
};

struct ContractionReport {
  ContractionFamily family;
  InequalityReport f;
  InequalityReport g;
  Verdict verdict() const {
    return f.verdict == Verdict::Pass && g.verdict == Verdict::Pass ? Verdict::Pass : Verdict::Fail;
  }
};

struct ConstantEstimate {
  double k = 0.0;
  double l = 0.0;
  std::size_t constraints_used = 0;
};

struct ComparabilityReport {
  Verdict verdict = Verdict::Pass;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::vector<std::pair<ProductPoint, ProductPoint>> failing_pairs;
};

struct LipschitzEstimate {
  double f = 0.0;  // sup d_X(F(p), F(q)) / d(p, q) over nearby pairs
  double g = 0.0;
};

struct HypothesisReport {
  ContractionFamily family;
  MonotoneReport mixed_monotone;
  SeedReport seed;
  ContractionReport contraction;
  ComparabilityReport comparability;
  std::optional<ConstantEstimate> estimate;
  std::string estimate_error;
  LipschitzEstimate lipschitz;

  /// Mixed monotone, seed and contraction: the existence hypotheses.
  bool existence_ok() const {
    return mixed_monotone.verdict == Verdict::Pass && seed.ok &&
           contraction.verdict() == Verdict::Pass;
  }
};

MonotoneReport check_mixed_monotone(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                    const SpaceSpec& Y, const SamplerConfig& cfg);

SeedReport check_seed(const MapSpec& F, const MapSpec& G, const SpaceSpec& X, const SpaceSpec& Y,
                      const Point& x0, const Point& y0);

/// Evaluates both sides of the family inequality for F (on d_X) and G (on
/// d_Y) over the shared ordered-pair stream.
ContractionReport check_contraction(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                    const SpaceSpec& Y, const ContractionFamily& family,
                                    const SamplerConfig& cfg);

/// Smallest (k, l) making every sampled inequality hold. SymHalf constants
/// are independent suprema; the other families minimise k + l subject to
/// all sampled linear constraints. Throws Error(Degenerate) when every
/// sample has a vanishing right-hand side.
ConstantEstimate estimate_constants(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                    const SpaceSpec& Y, FamilyKind kind, const SamplerConfig& cfg);

ComparabilityReport check_comparability(const SpaceSpec& X, const SpaceSpec& Y,
                                        const SamplerConfig& cfg);

LipschitzEstimate estimate_lipschitz(const MapSpec& F, const MapSpec& G, const SpaceSpec& X,
                                     const SpaceSpec& Y, const SamplerConfig& cfg);

/// The F- and G-terms of the family inequality for one ordered draw.
std::pair<ContractionTerms, ContractionTerms> contraction_terms(const MapSpec& F, const MapSpec& G,
                                                                const SpaceSpec& X,
                                                                const SpaceSpec& Y, FamilyKind kind,
                                                                const OrderedDraw& draw);

/// Runs every checker on the problem.
HypothesisReport audit(const ProblemSpec& problem, const SamplerConfig& cfg,
                       bool with_estimate = true);

}  // namespace fgfp
