#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "fgfp/fgfp.h"

namespace {

fgfp_problem* corpus(const char* id) {
  fgfp_problem* p = nullptr;
  REQUIRE(fgfp_problem_from_corpus(id, &p) == FGFP_OK);
  return p;
}

}  // namespace

TEST_CASE("options and version") {
  fgfp_options o;
  fgfp_options_init(&o);
  CHECK(o.tol == 1e-10);
  CHECK(o.max_iter == 10000);
  CHECK(o.samples_per_check == 2000);
  CHECK(std::string(fgfp_version()) == "1.0.0");
}

TEST_CASE("corpus enumeration") {
  CHECK(fgfp_corpus_size() == 5);
  const char* id = nullptr;
  const char* cite = nullptr;
  CHECK(fgfp_corpus_entry(0, &id, &cite) == FGFP_OK);
  CHECK(std::string(id) == "ex1");
  CHECK(fgfp_corpus_entry(5, &id, &cite) == FGFP_ERR_INVALID_ARGUMENT);
  fgfp_problem* p = nullptr;
  CHECK(fgfp_problem_from_corpus("nope", &p) == FGFP_ERR_INPUT);
  CHECK(p == nullptr);
  CHECK(std::string(fgfp_last_error()).find("nope") != std::string::npos);
}

TEST_CASE("solve through the C API") {
  fgfp_problem* p = corpus("ex3");
  int code = -1;
  char* report = nullptr;
  char* trace = nullptr;
  fgfp_solution* s = nullptr;
  REQUIRE(fgfp_solve(p, nullptr, &code, &report, &trace, &s) == FGFP_OK);
  CHECK(code == 0);
  REQUIRE(s);
  CHECK(fgfp_solution_converged(s) == 1);
  double x = 0, y = 0;
  CHECK(fgfp_solution_x(s, &x, 1) == 1);
  CHECK(fgfp_solution_y(s, &y, 1) == 1);
  CHECK(std::abs(x - 4.0 / 3) + std::abs(y + 4.0 / 3) < 1e-8);
  CHECK(fgfp_solution_bound_violations(s) == 0);
  CHECK(fgfp_solution_residual_x(s) + fgfp_solution_residual_y(s) <= 1e-10);
  CHECK(std::string(report).find("\"schema\": 1") != std::string::npos);
  CHECK(std::string(trace).rfind("n,x1,y1,step_x,step_y,bound_x,bound_y,monotone_ok\n", 0) == 0);
  fgfp_free_string(report);
  fgfp_free_string(trace);
  fgfp_solution_free(s);

  fgfp_options o;
  fgfp_options_init(&o);
  o.max_iter = 3;
  REQUIRE(fgfp_solve(p, &o, &code, &report, nullptr, nullptr) == FGFP_OK);
  CHECK(code == 3);
  fgfp_free_string(report);
  fgfp_problem_free(p);
}

TEST_CASE("parse errors and round trip") {
  fgfp_problem* p = corpus("ex1");
  char* json = nullptr;
  REQUIRE(fgfp_problem_to_json(p, &json) == FGFP_OK);
  fgfp_problem* back = nullptr;
  CHECK(fgfp_problem_parse(json, "ex1.json", &back) == FGFP_OK);
  fgfp_problem_free(back);

  std::string broken(json);
  broken.replace(broken.find("(a1 - b1)/3"), 11, "a1 +");
  CHECK(fgfp_problem_parse(broken.c_str(), "ex1.json", &back) == FGFP_ERR_INPUT);
  CHECK(back == nullptr);
  CHECK(std::string(fgfp_last_error()).rfind("ex1.json:", 0) == 0);
  fgfp_free_string(json);
  CHECK(fgfp_problem_parse(nullptr, "x", &back) == FGFP_ERR_INVALID_ARGUMENT);
  fgfp_problem_free(p);
}

TEST_CASE("check and unique") {
  fgfp_problem* p = corpus("ex2");
  int code = -1;
  char* report = nullptr;
  REQUIRE(fgfp_check(p, nullptr, &code, &report) == FGFP_OK);
  CHECK(code == 0);
  CHECK(std::string(report).find("estimated_constants") != std::string::npos);
  fgfp_free_string(report);

  REQUIRE(fgfp_unique(p, "{\"seeds\": [{\"x0\": [-3], \"y0\": [4]}]}", "s.json", nullptr, &code, &report) ==
          FGFP_OK);
  CHECK(code == 0);
  fgfp_free_string(report);
  CHECK(fgfp_unique(p, "{\"seeds\": [{\"x0\": [3], \"y0\": [4]}]}", "s.json", nullptr, &code, &report) ==
        FGFP_ERR_INPUT);
  fgfp_problem_free(p);
}

TEST_CASE("run-all") {
  int code = -1;
  char* report = nullptr;
  REQUIRE(fgfp_corpus_run_all(nullptr, &code, &report) == FGFP_OK);
  CHECK(code == 0);
  CHECK(std::string(report).find("\"pass\": true") != std::string::npos);
  fgfp_free_string(report);
}
