#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stabpres {

enum class ErrorKind {
  // complex
  MissingFace,
  DuplicateSimplex,
  DegenerateSimplex,
  DimensionTooHigh,
  UnknownVertex,
  SimplexNotInComplex,
  NotAnEdge,
  EmptyPath,
  // action
  NotABijection,
  NotSimplicial,
  GroupTooLarge,
  RotationFound,
  RefinementFailed,
  OrbitCollision,
  PreconditionUnvalidated,
  // homotopy
  IllegalMove,
  BudgetExhausted,
  NotCollapsible,
  BadSize,
  // armstrong
  Disconnected,
  LiftFailed,
  LetterInvariantViolated,
  // presentation
  CertificateFailed,
  UnknownSymbol,
  // io / cli
  MalformedInput,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);

/// Base of every error thrown by the library. `kind()` is stable and is what
/// the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stabpres
