#include "space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "error.hpp"

namespace fgfp {

namespace {

void require_finite(std::span<const double> coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) throw Error(ErrorKind::Domain, "point coordinate is not finite");
  }
}

const char* order_name(OrderKind kind) {
  switch (kind) {
    case OrderKind::Componentwise: return "COMPONENTWISE";
    case OrderKind::ComponentwiseReversed: return "COMPONENTWISE_REVERSED";
    case OrderKind::Discrete: return "DISCRETE";
    case OrderKind::DiscretePlusPairs: return "DISCRETE_PLUS_PAIRS";
  }
  return "?";
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { require_finite(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { require_finite(coords_); }

std::string to_string(const Point& p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    if (i) out += ", ";
    out += buf;
  }
  out += ")";
  return out;
}

// ---------------------------------------------------------------------------
// OrderSpec

OrderSpec::OrderSpec(OrderKind kind, std::vector<std::pair<Point, Point>> extra_pairs, double slack)
    : kind_(kind), extra_pairs_(std::move(extra_pairs)), slack_(slack) {
  if (!(slack_ >= 0.0) || !std::isfinite(slack_)) {
    throw Error(ErrorKind::Input, "order slack must be a finite nonnegative number");
  }
  if (kind_ != OrderKind::DiscretePlusPairs) {
    if (!extra_pairs_.empty()) {
      throw Error(ErrorKind::Input,
                  std::string("extra_pairs are only allowed for DISCRETE_PLUS_PAIRS, not ") +
                      order_name(kind_));
    }
    return;
  }

  std::vector<Point> nodes;
  auto node_of = [&](const Point& p) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].dim() == p.dim() && equal(nodes[i], p)) return i;
    }
    nodes.push_back(p);
    return nodes.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [a, b] : extra_pairs_) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::Dimension, "extra pair has mismatched dimensions");
    edges.emplace_back(node_of(a), node_of(b));
  }
  const std::size_t n = nodes.size();
  std::vector<char> reach(n * n, 0);
  for (auto [i, j] : edges) reach[i * n + j] = 1;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i * n + m])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[m * n + j]) reach[i * n + j] = 1;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !reach[i * n + j]) continue;
      if (reach[j * n + i]) {
        throw Error(ErrorKind::Input, "extra_pairs relate " + to_string(nodes[i]) + " and " +
                                          to_string(nodes[j]) + " in both directions");
      }
      closure_.emplace_back(nodes[i], nodes[j]);
    }
  }
}

bool OrderSpec::equal(const Point& a, const Point& b) const {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (std::fabs(a[i] - b[i]) > slack_) return false;
  }
  return true;
}

bool OrderSpec::leq(const Point& a, const Point& b) const {
  switch (kind_) {
    case OrderKind::Componentwise:
      for (std::size_t i = 0; i < a.dim(); ++i)
        if (a[i] > b[i] + slack_) return false;
      return true;
    case OrderKind::ComponentwiseReversed:
      for (std::size_t i = 0; i < a.dim(); ++i)
        if (b[i] > a[i] + slack_) return false;
      return true;
    case OrderKind::Discrete:
      return equal(a, b);
    case OrderKind::DiscretePlusPairs:
      if (equal(a, b)) return true;
      return std::any_of(closure_.begin(), closure_.end(), [&](const auto& pr) {
        return pr.first.dim() == a.dim() && equal(a, pr.first) && equal(b, pr.second);
      });
  }
  return false;
}

std::optional<Point> OrderSpec::common_lower(const Point& a, const Point& b) const {
  std::vector<double> c(a.dim());
  switch (kind_) {
    case OrderKind::Componentwise:
      for (std::size_t i = 0; i < a.dim(); ++i) c[i] = std::min(a[i], b[i]);
      return Point(std::move(c));
    case OrderKind::ComponentwiseReversed:
      for (std::size_t i = 0; i < a.dim(); ++i) c[i] = std::max(a[i], b[i]);
      return Point(std::move(c));
    case OrderKind::Discrete:
      if (equal(a, b)) return a;
      return std::nullopt;
    case OrderKind::DiscretePlusPairs: {
      std::vector<const Point*> candidates{&a, &b};
      for (const auto& pr : closure_) candidates.push_back(&pr.first);
      for (const Point* cand : candidates) {
        if (cand->dim() == a.dim() && leq(*cand, a) && leq(*cand, b)) return *cand;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<Point> OrderSpec::common_upper(const Point& a, const Point& b) const {
  std::vector<double> c(a.dim());
  switch (kind_) {
    case OrderKind::Componentwise:
      for (std::size_t i = 0; i < a.dim(); ++i) c[i] = std::max(a[i], b[i]);
      return Point(std::move(c));
    case OrderKind::ComponentwiseReversed:
      for (std::size_t i = 0; i < a.dim(); ++i) c[i] = std::min(a[i], b[i]);
      return Point(std::move(c));
    case OrderKind::Discrete:
      if (equal(a, b)) return a;
      return std::nullopt;
    case OrderKind::DiscretePlusPairs: {
      std::vector<const Point*> candidates{&a, &b};
      for (const auto& pr : closure_) candidates.push_back(&pr.second);
      for (const Point* cand : candidates) {
        if (cand->dim() == a.dim() && leq(a, *cand) && leq(b, *cand)) return *cand;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// MetricSpec

MetricSpec MetricSpec::weighted_l1(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::Input, "metric weights must be finite and strictly positive");
    }
  }
  MetricSpec m;
  m.kind_ = MetricKind::WeightedL1;
  m.weights_ = std::move(weights);
  return m;
}

double MetricSpec::distance(std::span<const double> a, std::span<const double> b) const {
  double sum = 0.0;
  if (kind_ == MetricKind::L1) {
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) sum += weights_[i] * std::fabs(a[i] - b[i]);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// SpaceSpec

SpaceSpec::SpaceSpec(std::size_t dim, std::vector<double> lower, std::vector<double> upper,
                     MetricSpec metric, OrderSpec order, std::optional<Box> sampling_box)
    : dim_(dim),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      metric_(std::move(metric)),
      order_(std::move(order)) {
  if (dim_ == 0) throw Error(ErrorKind::Input, "space dimension must be positive");
  if (lower_.size() != dim_ || upper_.size() != dim_) {
    throw Error(ErrorKind::Dimension, "space bounds must have one entry per dimension");
  }
  if (metric_.kind() == MetricKind::WeightedL1 && metric_.weights().size() != dim_) {
    throw Error(ErrorKind::Dimension, "WEIGHTED_L1 needs one weight per dimension");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    if (std::isnan(lower_[i]) || std::isnan(upper_[i]) || lower_[i] == HUGE_VAL ||
        upper_[i] == -HUGE_VAL) {
      throw Error(ErrorKind::Input, "invalid space bound");
    }
    if (lower_[i] > upper_[i]) throw Error(ErrorKind::Input, "space lower bound exceeds upper bound");
  }
  for (const auto& [a, b] : order_.extra_pairs()) {
    if (a.dim() != dim_) throw Error(ErrorKind::Dimension, "extra pair dimension differs from space");
    (void)b;
  }

  if (sampling_box) {
    sampling_box_ = std::move(*sampling_box);
    if (sampling_box_.lower.size() != dim_ || sampling_box_.upper.size() != dim_) {
      throw Error(ErrorKind::Dimension, "sampling box must have one entry per dimension");
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      const double lo = sampling_box_.lower[i];
      const double hi = sampling_box_.upper[i];
      if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorKind::Input, "sampling box must be bounded");
      }
      if (lo > hi) throw Error(ErrorKind::Input, "sampling box lower bound exceeds upper bound");
      if (lo < lower_[i] || hi > upper_[i]) {
        throw Error(ErrorKind::Input, "sampling box must lie inside the space bounds");
      }
    }
  } else {
    sampling_box_.lower.resize(dim_);
    sampling_box_.upper.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const bool lo_open = std::isinf(lower_[i]);
      const bool hi_open = std::isinf(upper_[i]);
      double lo = lower_[i];
      double hi = upper_[i];
      if (lo_open && hi_open) {
        lo = -10.0;
        hi = 10.0;
      } else if (lo_open) {
        lo = hi - 10.0;
      } else if (hi_open) {
        hi = lo + 10.0;
      }
      sampling_box_.lower[i] = lo;
      sampling_box_.upper[i] = hi;
    }
  }
}

SpaceSpec SpaceSpec::interval(double lower, double upper, OrderSpec order) {
  return SpaceSpec(1, {lower}, {upper}, MetricSpec::l1(), std::move(order));
}

bool SpaceSpec::contains(const Point& p) const {
  if (p.dim() != dim_) return false;
  const double tol = order_.slack();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (p[i] < lower_[i] - tol || p[i] > upper_[i] + tol) return false;
  }
  return true;
}

void SpaceSpec::require_dim(const Point& p, const char* what) const {
  if (p.dim() != dim_) {
    throw Error(ErrorKind::Dimension, std::string(what) + " has dimension " +
                                          std::to_string(p.dim()) + ", space has " +
                                          std::to_string(dim_));
  }
}

void SpaceSpec::require_inside(const Point& p, const char* what) const {
  require_dim(p, what);
  if (!contains(p)) {
    throw Error(ErrorKind::Domain, std::string(what) + " " + to_string(p) + " lies outside the space");
  }
}

double SpaceSpec::distance(const Point& a, const Point& b) const {
  require_inside(a, "point");
  require_inside(b, "point");
  return metric_.distance(a.coords(), b.coords());
}

double SpaceSpec::raw_distance(const Point& a, const Point& b) const {
  require_dim(a, "point");
  require_dim(b, "point");
  return metric_.distance(a.coords(), b.coords());
}

bool SpaceSpec::leq(const Point& a, const Point& b) const {
  require_dim(a, "point");
  require_dim(b, "point");
  return order_.leq(a, b);
}

bool SpaceSpec::comparable(const Point& a, const Point& b) const { return leq(a, b) || leq(b, a); }

double product_distance(const SpaceSpec& X, const SpaceSpec& Y, const ProductPoint& p,
                        const ProductPoint& q) {
  return X.raw_distance(p.x, q.x) + Y.raw_distance(p.y, q.y);
}

bool product_leq(const SpaceSpec& X, const SpaceSpec& Y, const ProductPoint& p,
                 const ProductPoint& q) {
  return X.leq(p.x, q.x) && Y.leq(q.y, p.y);
}

bool product_comparable(const SpaceSpec& X, const SpaceSpec& Y, const ProductPoint& p,
                        const ProductPoint& q) {
  return product_leq(X, Y, p, q) || product_leq(X, Y, q, p);
}

}  // namespace fgfp
