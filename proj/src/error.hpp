#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgfp {

enum class ErrorKind {
  Input,            // malformed problem/seed file, schema violation
  Dimension,        // point or map arity disagrees with a space
  Domain,           // point outside its space
  Parse,            // expression syntax
  Eval,             // runtime evaluation failure (division by zero, non-finite)
  InvalidConstants, // contraction constants outside their family's range
  Hypothesis,       // a required hypothesis (seed condition) does not hold
  Degenerate,       // sampler produced no usable data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Expression syntax error. `position` is the 1-based column in the
/// expression text where the problem was detected.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorKind::Parse, "column " + std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

}  // namespace fgfp
