#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace odf {

/// Failure kinds raised by the library. The CLI maps these onto exit codes
/// and the `code` field of structured error output.
enum class ErrorCode {
  DivisionByZero,
  DivisionByNonUnit,
  DenominatorVanishes,
  SingularJacobian,
  ZeroDenominator,
  QuantifierUnsupported,
  HigherDerivationInGermModel,
  IdentityInGenerators,
  UnknownElement,
  MonotonicityViolation,
  NonCommutingDerivations,
  InvalidCondition,
  NotCoherent,
  SingularInitialData,
  PremiseFails,
  SeparantVanishes,
  ZeroPolynomialWithStrictSign,
  EmptyInterval,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error in one of the textual input formats; positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace odf
