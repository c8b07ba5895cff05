#include <doctest.h>

#include <string>

#include "corpus.hpp"
#include "error.hpp"
#include "problem_io.hpp"
#include "solver.hpp"

using namespace fgfp;

namespace {

const char* kExample = R"({
  "spaces": {
    "X": {"dim": 1, "lower": ["-inf"], "upper": [0]},
    "Y": {"dim": 1, "lower": [0], "upper": ["inf"]}
  },
  "maps": {"F": "(a1 - b1)/3", "G": "(a1 - b1)/5"},
  "family": {"kind": "SYM_HALF", "k": 0.6666666666666666, "l": 0.4},
  "seed": {"x0": [-1], "y0": [1]},
  "expected": {"fixed_point": {"x": [0], "y": [0]}, "unique": true}
})";

std::string error_of(const std::string& text) {
  try {
    parse_problem(text, "p.json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    return e.what();
  }
  FAIL("expected an input error");
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("parse a problem file") {
  const LoadedProblem lp = parse_problem(kExample, "p.json");
  const ProblemSpec& p = lp.problem;
  CHECK(p.X.dim() == 1);
  CHECK(std::isinf(p.X.lower()[0]));
  CHECK(p.X.sampling_box().lower[0] == -10.0);
  CHECK(p.family.kind() == FamilyKind::SymHalf);
  CHECK(p.seed.x[0] == -1.0);
  CHECK(p.expected_unique == true);
  CHECK(p.declared_fixed_point->y[0] == 0.0);
  CHECK_FALSE(lp.id);
}

TEST_CASE("schema errors are line anchored") {
  CHECK(error_of(replace(kExample, "\"dim\": 1, \"lower\": [0]", "\"dim\": 1, \"bogus\": 3, \"lower\": [0]"))
            .rfind("p.json:4:21: /spaces/Y/bogus: unknown key", 0) == 0);
  CHECK(error_of(replace(kExample, "(a1 - b1)/3", "a1 +")).rfind("p.json:6:22: /maps/F", 0) == 0);
  CHECK(error_of(replace(kExample, "(a1 - b1)/3", "a1 +")).find("expected operand") != std::string::npos);
  CHECK(error_of(replace(kExample, "SYM_HALF", "BANACH")).find("unknown family") != std::string::npos);
  CHECK(error_of(replace(kExample, "\"k\": 0.6666666666666666", "\"k\": 1.5")).find("p.json:7:") == 0);
  CHECK(error_of(replace(kExample, "\"x0\": [-1]", "\"x0\": [1]")).find("outside X") != std::string::npos);
  CHECK(error_of(replace(kExample, "\"x0\": [-1]", "\"x0\": [-1, 2]")).find("expected 1 entries") !=
        std::string::npos);
  CHECK(error_of(replace(kExample, "[\"-inf\"]", "[\"inf\"]")).find("-inf") != std::string::npos);
  CHECK(error_of(replace(kExample, "\"seed\"", "\"sed\"")).find("unknown key 'sed'") != std::string::npos);
  CHECK(error_of("{\"maps\": [1,").rfind("p.json:1:", 0) == 0);
  CHECK(error_of("{\n\n  \"spaces\": 3\n}").rfind("p.json:3:13: /spaces: expected an object", 0) == 0);
}

TEST_CASE("metric and order sections") {
  const std::string text = replace(
      kExample, "\"X\": {\"dim\": 1, \"lower\": [\"-inf\"], \"upper\": [0]}",
      "\"X\": {\"dim\": 1, \"lower\": [\"-inf\"], \"upper\": [0], \"metric\": {\"kind\": \"WEIGHTED_L1\", "
      "\"weights\": [2]}, \"order\": {\"kind\": \"COMPONENTWISE\", \"slack\": 0}, \"sampling_box\": "
      "{\"lower\": [-3], \"upper\": [0]}}");
  const ProblemSpec p = parse_problem(text, "p.json").problem;
  CHECK(p.X.distance(Point{-1.0}, Point{0.0}) == 2.0);
  CHECK(p.X.order().slack() == 0.0);
  CHECK(p.X.sampling_box().lower[0] == -3.0);

  CHECK(error_of(replace(text, "\"weights\": [2]", "\"weights\": [0]")).find("/spaces/X/metric/weights") !=
        std::string::npos);
  CHECK(error_of(replace(text, "{\"lower\": [-3], \"upper\": [0]}", "{\"lower\": [-3], \"upper\": [1]}")).find("inside") != std::string::npos);
  CHECK(error_of(replace(text, "\"order\": {\"kind\": \"COMPONENTWISE\", \"slack\": 0}",
                         "\"order\": {\"kind\": \"COMPONENTWISE\", \"extra_pairs\": []}"))
            .find("extra_pairs") != std::string::npos);
}

TEST_CASE("corpus entries round-trip through the file format") {
  for (const auto& e : builtin_problems()) {
    CAPTURE(e.id);
    const std::string text = problem_to_json(e.problem, e.id, e.citation).dump(2);
    const LoadedProblem back = parse_problem(text, e.id);
    CHECK(back.id == e.id);
    CHECK(back.citation == e.citation);
    CHECK(back.problem.F.same_ast(e.problem.F));
    CHECK(back.problem.G.same_ast(e.problem.G));
    CHECK(back.problem.X.lower() == e.problem.X.lower());
    CHECK(back.problem.Y.upper() == e.problem.Y.upper());
    CHECK(back.problem.X.sampling_box() == e.problem.X.sampling_box());
    CHECK(back.problem.Y.order().closure() == e.problem.Y.order().closure());
    CHECK(back.problem.family.k() == e.problem.family.k());
    CHECK(back.problem.seed == e.problem.seed);
    CHECK(problem_to_json(back.problem, back.id, back.citation).dump(2) == text);
    const SolveOutcome a = solve(e.problem), b = solve(back.problem);
    CHECK(a.result.x_star == b.result.x_star);
    CHECK(a.result.y_star == b.result.y_star);
  }
}

TEST_CASE("seed files") {
  const ProblemSpec p = parse_problem(kExample, "p.json").problem;
  const auto seeds = parse_seeds(R"({"seeds": [{"x0": [-5], "y0": [2]}, {"x0": [0], "y0": [0]}]})", "s.json", p);
  REQUIRE(seeds.size() == 2);
  CHECK(seeds[0].x[0] == -5.0);
  CHECK(parse_seeds(R"({"seeds": []})", "s.json", p).empty());
  CHECK_THROWS_AS(parse_seeds(R"({"seeds": [{"x0": [1], "y0": [2]}]})", "s.json", p), Error);
  CHECK_THROWS_AS(parse_seeds(R"({"seeds": [{"x0": [-1]}]})", "s.json", p), Error);
  CHECK_THROWS_AS(parse_seeds(R"({"seed": []})", "s.json", p), Error);
}
