#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "space.hpp"

namespace fgfp {

enum class PairStrategy { SortCoordinates, Rejection };

struct SamplerConfig {
  std::size_t samples_per_check = 2000;
  std::uint64_t rng_seed = 1;
  PairStrategy comparable_pair_strategy = PairStrategy::SortCoordinates;
};

// mt19937_64 output is fixed by the standard; the conversions below are ours
// so sample streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

Point sample_point(const SpaceSpec& space, Rng& rng);

/// One draw of an ordered pair (lo, hi) with lo <= hi. With SortCoordinates
/// the draw always succeeds; with Rejection it returns nullopt when two
/// independent points turn out incomparable.
std::optional<std::pair<Point, Point>> sample_ordered_pair(const SpaceSpec& space, Rng& rng,
                                                           PairStrategy strategy);

/// Ordered pairs drawn jointly in X and Y, used by every contraction check so
/// that checkers and estimators see the same stream for the same seed.
struct OrderedDraw {
  Point x_lo, x_hi;
  Point y_lo, y_hi;
};

/// Throws Error(Degenerate) when no comparable pairs could be drawn.
std::vector<OrderedDraw> draw_ordered_pairs(const SpaceSpec& X, const SpaceSpec& Y,
                                            const SamplerConfig& cfg, std::uint64_t stream);

}  // namespace fgfp
