#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bok {

enum class ErrorKind {
  not_prime,
  even_characteristic,
  degree_zero,
  division_by_zero,
  dimension_mismatch,
  missing_letter,
  malformed_word,
  degenerate_parameter,
  precondition_violated,
  budget_exceeded,
  parse_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::not_prime: return "NotPrime";
    case ErrorKind::even_characteristic: return "EvenCharacteristic";
    case ErrorKind::degree_zero: return "DegreeZero";
    case ErrorKind::division_by_zero: return "DivisionByZero";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::missing_letter: return "MissingLetter";
    case ErrorKind::malformed_word: return "MalformedWord";
    case ErrorKind::degenerate_parameter: return "DegenerateParameter";
    case ErrorKind::precondition_violated: return "PreconditionViolated";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::parse_error: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bok
