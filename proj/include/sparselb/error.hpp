#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparselb {

enum class ErrorKind {
  // matrices
  ZeroColumn,
  DimensionMismatch,
  IndexOutOfRange,
  InvalidEntry,
  // constructions
  InvalidSparsity,
  NotDivisible,
  TooLarge,
  Exhausted,
  TooFewWords,
  ShapeMismatch,
  InvalidDimension,
  // measures
  NotNormalized,
  TooFewColumns,
  TooManySupports,
  EmptyIndexSet,
  NonpositiveThreshold,
  NoScaleFound,
  // witnesses
  InvalidT,
  PreconditionViolated,
  NotSignMatrix,
  DegenerateColumn,
  // bounds
  Infeasible,
  BadArgs,
  RangeError,
  // io / cli
  ParseError,
  BadConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sparselb
