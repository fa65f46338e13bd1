#pragma once

#include <stdexcept>
#include <string>

namespace capclass {

enum class ErrorKind {
  ZeroVector,
  DimensionMismatch,
  DimensionOutOfRange,
  InvalidPoint,
  DegenerateLine,
  NotACap,
  NotSpanning,
  SingularTuple,
  ParseError,
};

const char *to_string(ErrorKind kind);

// Single exception type for the library; `kind()` lets callers branch
// without string matching.
class CapError : public std::runtime_error {
public:
  CapError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace capclass
