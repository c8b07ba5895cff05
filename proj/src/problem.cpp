#include "problem.hpp"

#include <cmath>

#include "error.hpp"

namespace fgfp {

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::SymHalf: return "SYM_HALF";
    case FamilyKind::LinAsym: return "LIN_ASYM";
    case FamilyKind::Kannan: return "KANNAN";
    case FamilyKind::Chatterjea: return "CHATTERJEA";
  }
  return "?";
}

std::optional<FamilyKind> family_from_name(std::string_view name) {
  if (name == "SYM_HALF") return FamilyKind::SymHalf;
  if (name == "LIN_ASYM") return FamilyKind::LinAsym;
  if (name == "KANNAN") return FamilyKind::Kannan;
  if (name == "CHATTERJEA") return FamilyKind::Chatterjea;
  return std::nullopt;
}

ContractionFamily::ContractionFamily(FamilyKind kind, double k, double l)
    : kind_(kind), k_(k), l_(l) {
  auto invalid = [&](const char* rule) {
    throw Error(ErrorKind::InvalidConstants, std::string(family_name(kind)) + " requires " + rule +
                                                 " (got k=" + std::to_string(k) +
                                                 ", l=" + std::to_string(l) + ")");
  };
  if (!std::isfinite(k) || !std::isfinite(l) || k < 0.0 || l < 0.0) invalid("finite k, l >= 0");
  switch (kind) {
    case FamilyKind::SymHalf:
      if (k >= 1.0 || l >= 1.0) invalid("k, l in [0, 1)");
      break;
    case FamilyKind::LinAsym:
    case FamilyKind::Kannan:
      if (k + l >= 1.0) invalid("k + l < 1");
      break;
    case FamilyKind::Chatterjea:
      if (k >= 0.5 || l >= 0.5) invalid("k, l in [0, 1/2)");
      break;
  }
}

double ContractionFamily::ratio_x() const noexcept {
  switch (kind_) {
    case FamilyKind::SymHalf: return (k_ + l_) / 2.0;
    case FamilyKind::LinAsym: return k_ + l_;
    case FamilyKind::Kannan: return l_ / (1.0 - k_);
    case FamilyKind::Chatterjea: return l_ / (1.0 - l_);
  }
  return 0.0;
}

double ContractionFamily::ratio_y() const noexcept {
  switch (kind_) {
    case FamilyKind::SymHalf: return (k_ + l_) / 2.0;
    case FamilyKind::LinAsym: return k_ + l_;
    case FamilyKind::Kannan: return k_ / (1.0 - l_);
    case FamilyKind::Chatterjea: return k_ / (1.0 - k_);
  }
  return 0.0;
}

void ProblemSpec::validate() const {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw Error(ErrorKind::Dimension, msg);
  };
  check(F.first_arg_dim() == X.dim() && F.second_arg_dim() == Y.dim() && F.out_dim() == X.dim(),
        "F must map X × Y into X");
  check(G.first_arg_dim() == Y.dim() && G.second_arg_dim() == X.dim() && G.out_dim() == Y.dim(),
        "G must map Y × X into Y");
  X.require_inside(seed.x, "seed x0");
  Y.require_inside(seed.y, "seed y0");
  if (declared_fixed_point) {
    X.require_dim(declared_fixed_point->x, "declared fixed point x");
    Y.require_dim(declared_fixed_point->y, "declared fixed point y");
  }
}

}  // namespace fgfp
