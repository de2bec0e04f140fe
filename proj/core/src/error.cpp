#include "lowdim/error.hpp"

namespace lowdim {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroOriginalDistance: return "ZeroOriginalDistance";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ZeroLexpans: return "ZeroLexpans";
    case ErrorKind::NonpositiveScale: return "NonpositiveScale";
    case ErrorKind::BadIndexSet: return "BadIndexSet";
    case ErrorKind::DegenerateInner: return "DegenerateInner";
    case ErrorKind::PointOutsideBall: return "PointOutsideBall";
    case ErrorKind::MalformedBits: return "MalformedBits";
    case ErrorKind::Misalignment: return "Misalignment";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::MalformedArtifact: return "MalformedArtifact";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace lowdim
