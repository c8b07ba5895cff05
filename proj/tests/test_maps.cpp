#include <doctest.h>

#include <random>

#include "error.hpp"
#include "expr.hpp"
#include "oracle.hpp"
#include "sampling.hpp"

using namespace fgfp;

TEST_CASE("parse and evaluate the example maps") {
  const MapSpec F = MapSpec::parse("(a1 - b1)/3", 1, 1, 1);
  CHECK(F.eval(Point{-1.0}, Point{1.0})[0] == doctest::Approx(-2.0 / 3.0));

  const MapSpec id = MapSpec::parse("a1", 1, 1, 1);
  CHECK(id.eval(Point{0.25}, Point{9.0})[0] == 0.25);

  const MapSpec F2 = MapSpec::parse("(4*a1 - 3*b1)/17", 1, 1, 1);
  CHECK(F2.eval(Point{1.0}, Point{2.0})[0] == doctest::Approx((4.0 - 6.0) / 17.0));

  const MapSpec F3 = MapSpec::parse("a1/4 + 1", 1, 1, 1);
  CHECK(F3.eval(Point{4.0 / 3.0}, Point{-7.0})[0] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("functions, precedence and vector outputs") {
  const MapSpec m = MapSpec::parse("abs(a1 - 2) ; min(a1, b1, 0.5) ; max(b2, -a2) ; -a1*-b1 + 2*3/4", 2, 2, 4);
  const Point v = m.eval(Point{1.0, 3.0}, Point{-2.0, -4.0});
  CHECK(v[0] == 1.0);
  CHECK(v[1] == -2.0);
  CHECK(v[2] == -3.0);
  CHECK(v[3] == doctest::Approx(-1.0 * 2.0 + 1.5));
}

TEST_CASE("parse errors carry positions") {
  try {
    MapSpec::parse("a1 +", 1, 1, 1);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
    CHECK(std::string(e.message()).find("operand") != std::string::npos);
  }
  CHECK_THROWS_AS(MapSpec::parse("a2", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("c1", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("a1/0", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("a1; b1", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("abs(a1, b1)", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("min(a1)", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("(a1", 1, 1, 1), ParseError);
  CHECK_THROWS_AS(MapSpec::parse("a0", 1, 1, 1), ParseError);
}

TEST_CASE("runtime evaluation failures") {
  const MapSpec m = MapSpec::parse("1/(a1 - b1)", 1, 1, 1);
  CHECK_THROWS_AS(m.eval(Point{1.0}, Point{1.0}), Error);
  const MapSpec big = MapSpec::parse("a1*a1*a1*a1*a1*a1*a1*a1", 1, 1, 1);
  CHECK_THROWS_AS(big.eval(Point{1e300}, Point{0.0}), Error);
  CHECK_THROWS_AS(m.eval(Point{1.0, 2.0}, Point{1.0}), Error);
}

TEST_CASE("pretty-print round trip") {
  const char* texts[] = {"(a1 - b1)/3", "-a1 - -b1", "min(a1, 2*b1, abs(a1 - 0.1))",
                         "a1/4 + 1; 1e-3*b2 - a2", "((a1))", "-(a1 + b1)*3"};
  const std::size_t outs[] = {1, 1, 1, 2, 1, 1};
  Rng rng(5);
  for (std::size_t t = 0; t < 6; ++t) {
    const MapSpec m = MapSpec::parse(texts[t], 2, 2, outs[t]);
    const MapSpec back = MapSpec::parse(m.to_string(), 2, 2, outs[t]);
    CHECK(m.same_ast(back));
    CHECK(back.to_string() == m.to_string());
    for (int i = 0; i < 50; ++i) {
      const Point a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      const Point b{rng.uniform(-3, 3), rng.uniform(-3, 3)};
      CHECK(m.eval(a, b) == back.eval(a, b));
    }
  }
}

TEST_CASE("iterate_pair") {
  const MapSpec F = MapSpec::parse("(a1 - b1)/3", 1, 1, 1);
  const MapSpec G = MapSpec::parse("(a1 - b1)/5", 1, 1, 1);
  const ProductPoint z = iterate_pair(F, G, Point{-1.0}, Point{1.0}, 0);
  CHECK(z.x[0] == -1.0);
  CHECK(z.y[0] == 1.0);
  const ProductPoint one = iterate_pair(F, G, Point{-1.0}, Point{1.0}, 1);
  CHECK(one.x[0] == doctest::Approx(-2.0 / 3.0));
  CHECK(one.y[0] == doctest::Approx(2.0 / 5.0));
  const ProductPoint two = iterate_pair(F, G, Point{-1.0}, Point{1.0}, 2);
  CHECK(two.x[0] == doctest::Approx(-16.0 / 45.0).epsilon(1e-15));
  CHECK(two.y[0] == doctest::Approx(16.0 / 75.0).epsilon(1e-15));

  // Semigroup property.
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const Point x{rng.uniform(-5, 0)}, y{rng.uniform(0, 5)};
    const std::size_t m = rng.below(10), n = rng.below(10);
    const ProductPoint direct = iterate_pair(F, G, x, y, m + n);
    const ProductPoint mid = iterate_pair(F, G, x, y, n);
    const ProductPoint split = iterate_pair(F, G, mid.x, mid.y, m);
    CHECK(std::abs(direct.x[0] - split.x[0]) <= 1e-12);
    CHECK(std::abs(direct.y[0] - split.y[0]) <= 1e-12);
  }
}

TEST_CASE("linear maps agree with matrix arithmetic") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 20; ++t) {
    const oracle::AffinePair p = oracle::random_affine(gen, 0.8);
    const MapSpec F = MapSpec::parse(p.f_text(), p.m(), p.n(), p.m());
    const MapSpec G = MapSpec::parse(p.g_text(), p.n(), p.m(), p.n());
    Eigen::VectorXd x = Eigen::VectorXd::Random(p.m()), y = Eigen::VectorXd::Random(p.n());
    const Eigen::VectorXd fx = p.A * x - p.B * y + p.c;
    const Eigen::VectorXd gy = p.C * y - p.D * x + p.e;
    const Point px(std::vector<double>(x.data(), x.data() + x.size()));
    const Point py(std::vector<double>(y.data(), y.data() + y.size()));
    const Point f = F.eval(px, py), g = G.eval(py, px);
    for (int i = 0; i < p.m(); ++i) CHECK(std::abs(f[i] - fx(i)) <= 1e-14 * (1 + std::abs(fx(i))));
    for (int i = 0; i < p.n(); ++i) CHECK(std::abs(g[i] - gy(i)) <= 1e-14 * (1 + std::abs(gy(i))));
  }
}
