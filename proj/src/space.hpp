#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fgfp {

inline constexpr double kDefaultSlack = 1e-12;

/// A point of R^d. Coordinates are always finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

std::string to_string(const Point& p);

/// Element (x, y) of a product space X×Y.
struct ProductPoint {
  Point x;
  Point y;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

enum class OrderKind { Componentwise, ComponentwiseReversed, Discrete, DiscretePlusPairs };

/// Partial order on R^d with an absolute comparison slack.
///
/// DiscretePlusPairs is the equality order enlarged by a list of related
/// pairs; the transitive closure of that list is taken at construction and a
/// closure that relates two distinct points both ways is rejected.
class OrderSpec {
 public:
  explicit OrderSpec(OrderKind kind = OrderKind::Componentwise,
                     std::vector<std::pair<Point, Point>> extra_pairs = {},
                     double slack = kDefaultSlack);

  OrderKind kind() const noexcept { return kind_; }
  double slack() const noexcept { return slack_; }
  const std::vector<std::pair<Point, Point>>& extra_pairs() const noexcept { return extra_pairs_; }
  const std::vector<std::pair<Point, Point>>& closure() const noexcept { return closure_; }

  // Dimensions are the caller's responsibility.
  bool leq(const Point& a, const Point& b) const;
  bool equal(const Point& a, const Point& b) const;

  /// An element below both arguments, when the order provides one cheaply.
  std::optional<Point> common_lower(const Point& a, const Point& b) const;
  std::optional<Point> common_upper(const Point& a, const Point& b) const;

 private:
  OrderKind kind_;
  std::vector<std::pair<Point, Point>> extra_pairs_;
  std::vector<std::pair<Point, Point>> closure_;
  double slack_;
};

enum class MetricKind { L1, WeightedL1 };

class MetricSpec {
 public:
  MetricSpec() = default;
  static MetricSpec l1() { return MetricSpec(); }
  static MetricSpec weighted_l1(std::vector<double> weights);

  MetricKind kind() const noexcept { return kind_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  double distance(std::span<const double> a, std::span<const double> b) const;

 private:
  MetricKind kind_ = MetricKind::L1;
  std::vector<double> weights_;
};

/// Axis-aligned box; bounds may be infinite except for sampling boxes.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
  friend bool operator==(const Box&, const Box&) = default;
};

/// A partially ordered metric space realised as a box of R^d.
class SpaceSpec {
 public:
  /// `lower`/`upper` use ±infinity for unbounded sides. Without an explicit
  /// sampling box, each unbounded side is replaced by one 10 units away from
  /// the opposite finite side (or ±10 when both sides are open).
  SpaceSpec(std::size_t dim, std::vector<double> lower, std::vector<double> upper,
            MetricSpec metric = {}, OrderSpec order = OrderSpec{},
            std::optional<Box> sampling_box = std::nullopt);

  /// 1-D interval with the usual metric.
  static SpaceSpec interval(double lower, double upper, OrderSpec order = OrderSpec{});

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  const MetricSpec& metric() const noexcept { return metric_; }
  const OrderSpec& order() const noexcept { return order_; }
  const Box& sampling_box() const noexcept { return sampling_box_; }

  bool contains(const Point& p) const;

  /// Metric value; throws on dimension mismatch or points outside the domain.
  double distance(const Point& a, const Point& b) const;
  /// Metric value without the domain check (iterates may leave the box).
  double raw_distance(const Point& a, const Point& b) const;

  bool leq(const Point& a, const Point& b) const;
  bool comparable(const Point& a, const Point& b) const;

  void require_dim(const Point& p, const char* what) const;
  void require_inside(const Point& p, const char* what) const;

 private:
  std::size_t dim_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  MetricSpec metric_;
  OrderSpec order_;
  Box sampling_box_;
};

/// d((x,y),(u,v)) = d_X(x,u) + d_Y(y,v).
double product_distance(const SpaceSpec& X, const SpaceSpec& Y, const ProductPoint& p,
                        const ProductPoint& q);

/// (x,y) <= (u,v) iff x <= u in X and v <= y in Y.
bool product_leq(const SpaceSpec& X, const SpaceSpec& Y, const ProductPoint& p,
                 const ProductPoint& q);

bool product_comparable(const SpaceSpec& X, const SpaceSpec& Y, const ProductPoint& p,
                        const ProductPoint& q);

}  // namespace fgfp
