#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lowdim {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  ZeroOriginalDistance,
  DegeneratePair,
  ZeroDenominator,
  ZeroLexpans,
  NonpositiveScale,
  BadIndexSet,
  DegenerateInner,
  PointOutsideBall,
  MalformedBits,
  Misalignment,
  BudgetExceeded,
  MalformedArtifact,
  ConfigError,
  IoError,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the
/// CLI's exit path) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lowdim
