#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "problem.hpp"

namespace fgfp {

struct CorpusEntry {
  std::string id;
  ProblemSpec problem;
  std::string citation;
  bool expected_unique;
};

/// ex1..ex4 and coupled-reg, each with its declared fixed point and default seed.
const std::vector<CorpusEntry>& builtin_problems();

const CorpusEntry* find_entry(std::string_view id);

}  // namespace fgfp
