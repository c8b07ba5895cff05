#include "sampling.hpp"

#include <algorithm>

#include "error.hpp"

namespace fgfp {

Point sample_point(const SpaceSpec& space, Rng& rng) {
  const Box& box = space.sampling_box();
  std::vector<double> c(space.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = rng.uniform(box.lower[i], box.upper[i]);
  return Point(std::move(c));
}

std::optional<std::pair<Point, Point>> sample_ordered_pair(const SpaceSpec& space, Rng& rng,
                                                           PairStrategy strategy) {
  const OrderSpec& order = space.order();
  if (strategy == PairStrategy::Rejection) {
    Point a = sample_point(space, rng);
    Point b = sample_point(space, rng);
    if (order.leq(a, b)) return std::pair{std::move(a), std::move(b)};
    if (order.leq(b, a)) return std::pair{std::move(b), std::move(a)};
    return std::nullopt;
  }

  switch (order.kind()) {
    case OrderKind::Componentwise:
    case OrderKind::ComponentwiseReversed: {
      const Point a = sample_point(space, rng);
      const Point b = sample_point(space, rng);
      std::vector<double> lo(space.dim()), hi(space.dim());
      const bool reversed = order.kind() == OrderKind::ComponentwiseReversed;
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = reversed ? std::max(a[i], b[i]) : std::min(a[i], b[i]);
        hi[i] = reversed ? std::min(a[i], b[i]) : std::max(a[i], b[i]);
      }
      return std::pair{Point(std::move(lo)), Point(std::move(hi))};
    }
    case OrderKind::Discrete: {
      Point a = sample_point(space, rng);
      return std::pair{a, a};
    }
    case OrderKind::DiscretePlusPairs: {
      const auto& closure = order.closure();
      if (!closure.empty() && rng.below(2) == 0) {
        const auto& pr = closure[rng.below(closure.size())];
        return std::pair{pr.first, pr.second};
      }
      Point a = sample_point(space, rng);
      return std::pair{a, a};
    }
  }
  return std::nullopt;
}

std::vector<OrderedDraw> draw_ordered_pairs(const SpaceSpec& X, const SpaceSpec& Y,
                                            const SamplerConfig& cfg, std::uint64_t stream) {
  if (cfg.samples_per_check == 0) throw Error(ErrorKind::Input, "samples_per_check must be >= 1");
  Rng rng(cfg.rng_seed ^ (stream * 0x9E3779B97F4A7C15ULL));
  std::vector<OrderedDraw> draws;
  draws.reserve(cfg.samples_per_check);
  // Rejection may fail; bound the total attempts.
  const std::size_t max_attempts = cfg.samples_per_check * 20;
  for (std::size_t attempt = 0; attempt < max_attempts && draws.size() < cfg.samples_per_check;
       ++attempt) {
    auto px = sample_ordered_pair(X, rng, cfg.comparable_pair_strategy);
    auto py = sample_ordered_pair(Y, rng, cfg.comparable_pair_strategy);
    if (!px || !py) continue;
    draws.push_back({std::move(px->first), std::move(px->second), std::move(py->first),
                     std::move(py->second)});
  }
  if (draws.empty()) {
    throw Error(ErrorKind::Degenerate,
                "no comparable pairs found; the order is unusable with this sampling strategy");
  }
  return draws;
}

}  // namespace fgfp
