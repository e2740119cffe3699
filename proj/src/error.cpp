#include "sparselb/error.hpp"

namespace sparselb {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidEntry: return "InvalidEntry";
    case ErrorKind::InvalidSparsity: return "InvalidSparsity";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Exhausted: return "Exhausted";
    case ErrorKind::TooFewWords: return "TooFewWords";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::TooFewColumns: return "TooFewColumns";
    case ErrorKind::TooManySupports: return "TooManySupports";
    case ErrorKind::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorKind::NonpositiveThreshold: return "NonpositiveThreshold";
    case ErrorKind::NoScaleFound: return "NoScaleFound";
    case ErrorKind::InvalidT: return "InvalidT";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotSignMatrix: return "NotSignMatrix";
    case ErrorKind::DegenerateColumn: return "DegenerateColumn";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::BadArgs: return "BadArgs";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace sparselb
