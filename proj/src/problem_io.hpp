#pragma once

// Problem-file and seed-file JSON. Schema errors are reported as
// "<source>:<line>:<column>: <message>".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "problem.hpp"

namespace fgfp {

struct LoadedProblem {
  ProblemSpec problem;
  std::optional<std::string> id;
  std::optional<std::string> citation;
};

/// Throws Error(Input) with a line-anchored message on any syntax, schema or
/// semantic problem (unknown keys included).
LoadedProblem parse_problem(std::string_view text, std::string_view source);

nlohmann::ordered_json problem_to_json(const ProblemSpec& problem,
                                       const std::optional<std::string>& id = std::nullopt,
                                       const std::optional<std::string>& citation = std::nullopt);

/// `{"seeds": [{"x0": [...], "y0": [...]}, ...]}`; every seed must lie in the
/// problem's spaces.
std::vector<ProductPoint> parse_seeds(std::string_view text, std::string_view source,
                                      const ProblemSpec& problem);

nlohmann::ordered_json to_json(const Point& p);
/// Finite values as numbers, anything else as null.
nlohmann::ordered_json number_json(double v);

}  // namespace fgfp
