#include "corpus.hpp"

#include <cmath>

namespace fgfp {

namespace {

constexpr double kInf = HUGE_VAL;

SpaceSpec usual(double lo, double hi) { return SpaceSpec::interval(lo, hi); }

ProblemSpec make(SpaceSpec X, SpaceSpec Y, std::string_view f, std::string_view g,
                 ContractionFamily family, ProductPoint seed, ProductPoint fixed, bool unique) {
  MapSpec F = MapSpec::parse(f, X.dim(), Y.dim(), X.dim());
  MapSpec G = MapSpec::parse(g, Y.dim(), X.dim(), Y.dim());
  ProblemSpec p{std::move(X), std::move(Y), std::move(F), std::move(G), family,
                std::move(seed), std::move(fixed), unique};
  p.validate();
  return p;
}

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> out;

  out.push_back({"ex1",
                 make(usual(-kInf, 0.0), usual(0.0, kInf), "(a1 - b1)/3", "(a1 - b1)/5",
                      ContractionFamily(FamilyKind::SymHalf, 2.0 / 3.0, 2.0 / 5.0),
                      {{-1.0}, {1.0}}, {{0.0}, {0.0}}, true),
                 "symmetric-half contraction: X=(-inf,0], Y=[0,inf), F=(x-y)/3, G=(y-x)/5, "
                 "k=2/3, l=2/5",
                 true});

  out.push_back({"ex2",
                 make(usual(-kInf, 0.0), usual(0.0, kInf), "(4*a1 - 3*b1)/17",
                      "(4*a1 - 3*b1)/17",
                      ContractionFamily(FamilyKind::LinAsym, 4.0 / 17.0, 3.0 / 17.0),
                      {{-1.0}, {1.0}}, {{0.0}, {0.0}}, true),
                 "linear-asymmetric contraction: X=(-inf,0], Y=[0,inf), F=(4x-3y)/17, "
                 "G=(4y-3x)/17, k=4/17, l=3/17",
                 true});

  out.push_back({"ex3",
                 make(usual(1.0, 2.0), usual(-2.0, -1.0), "a1/4 + 1", "a1/4 - 1",
                      ContractionFamily(FamilyKind::Kannan, 1.0 / 3.0, 1.0 / 2.0), {{1.0}, {-1.0}},
                      {{4.0 / 3.0}, {-4.0 / 3.0}}, false),
                 "Kannan-type contraction: X=[1,2], Y=[-2,-1], F=x/4+1, G=y/4-1, k=1/3, l=1/2",
                 false});

  {
    SpaceSpec X = SpaceSpec::interval(0.0, 1.0, OrderSpec(OrderKind::Discrete));
    SpaceSpec Y = SpaceSpec::interval(
        -1.0, 0.0, OrderSpec(OrderKind::DiscretePlusPairs, {{Point{-1.0}, Point{0.0}}}));
    out.push_back({"ex4",
                   make(std::move(X), std::move(Y), "a1/3", "-b1/3",
                        ContractionFamily(FamilyKind::Chatterjea, 0.25, 0.25), {{0.0}, {0.0}},
                        {{0.0}, {0.0}}, true),
                   "Chatterjea-type contraction under discrete orders: X=[0,1] (equality), "
                   "Y=[-1,0] (equality plus -1 <= 0), F=x/3, G=-x/3, k=l=1/4",
                   true});
  }

  out.push_back({"coupled-reg",
                 make(usual(-5.0, 5.0), usual(-5.0, 5.0), "(a1 - b1)/4", "(a1 - b1)/4",
                      ContractionFamily(FamilyKind::SymHalf, 0.5, 0.5), {{-1.0}, {1.0}},
                      {{0.0}, {0.0}}, true),
                 "coupled fixed point (X=Y, F=G): X=Y=[-5,5], F=G=(a1-b1)/4, k=l=1/2", true});
  return out;
}

}  // namespace

const std::vector<CorpusEntry>& builtin_problems() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry* find_entry(std::string_view id) {
  for (const auto& e : builtin_problems()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace fgfp
