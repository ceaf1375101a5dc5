#pragma once

#include <stdexcept>
#include <string>

namespace contighyp {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  InvalidParameter,
  Parse,
  Domain,
  Pole,
  ShiftUnderflow,
  LogarithmicCase,
  NonConvergence,
  PrecisionExhausted,
  Overflow,
  NonFinite,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CONTIGHYP_DEFINE_ERROR(Name, Kind)                                \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

CONTIGHYP_DEFINE_ERROR(InvalidParameterError, InvalidParameter)
CONTIGHYP_DEFINE_ERROR(ParseError, Parse)
CONTIGHYP_DEFINE_ERROR(DomainError, Domain)
CONTIGHYP_DEFINE_ERROR(PoleError, Pole)
CONTIGHYP_DEFINE_ERROR(ShiftUnderflowError, ShiftUnderflow)
CONTIGHYP_DEFINE_ERROR(LogarithmicCaseError, LogarithmicCase)
CONTIGHYP_DEFINE_ERROR(NonConvergenceError, NonConvergence)
CONTIGHYP_DEFINE_ERROR(PrecisionExhaustedError, PrecisionExhausted)
CONTIGHYP_DEFINE_ERROR(OverflowError, Overflow)
CONTIGHYP_DEFINE_ERROR(NonFiniteError, NonFinite)

#undef CONTIGHYP_DEFINE_ERROR

}  // namespace contighyp
