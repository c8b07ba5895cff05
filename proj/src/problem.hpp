#pragma once

#include <optional>
#include <string>

#include "expr.hpp"
#include "space.hpp"

namespace fgfp {

enum class FamilyKind { SymHalf, LinAsym, Kannan, Chatterjea };

const char* family_name(FamilyKind kind);
std::optional<FamilyKind> family_from_name(std::string_view name);

/// Contraction inequality shape with its constants.
///
/// Valid ranges: SymHalf k, l in [0, 1); LinAsym and Kannan k, l >= 0 with
/// k + l < 1; Chatterjea k, l in [0, 1/2). Construction throws
/// Error(InvalidConstants) otherwise.
class ContractionFamily {
 public:
  ContractionFamily(FamilyKind kind, double k, double l);

  FamilyKind kind() const noexcept { return kind_; }
  double k() const noexcept { return k_; }
  double l() const noexcept { return l_; }

  /// Geometric ratio of the X- and Y-step bounds.
  double ratio_x() const noexcept;
  double ratio_y() const noexcept;

 private:
  FamilyKind kind_;
  double k_;
  double l_;
};

/// A full problem instance: spaces, maps, declared family and seed.
struct ProblemSpec {
  SpaceSpec X;
  SpaceSpec Y;
  MapSpec F;  // X × Y -> X
  MapSpec G;  // Y × X -> Y
  ContractionFamily family;
  ProductPoint seed;
  std::optional<ProductPoint> declared_fixed_point;
  std::optional<bool> expected_unique;

  /// Checks map arities against the spaces and that the seed lies inside.
  void validate() const;
};

}  // namespace fgfp
