#pragma once

#include <stdexcept>
#include <string>

namespace tbo {

enum class ErrorKind {
  ZeroVector,
  RankMismatch,
  DimensionMismatch,
  InvalidDatum,
  NotMinimal,
  NotAdjacent,
  SameChamber,
  NotCrepant,
  NonpositiveL,
  BaseNotMonomial,
  DenominatorNotDividingL,
  NotAdmissible,
  DivisionByZeroAtSpecialization,
  CharacterMismatch,
  MissingGlobalExpression,
  SingularAfterResampling,
  SaturationFailure,
  EulerClassVanishes,
  ParseError,
};

const char* to_string(ErrorKind kind);

// Every failure a caller can act on is raised as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tbo
