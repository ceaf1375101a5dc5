#include "contighyp/precision.hpp"

#include <cmath>
#include <string>

#include "contighyp/errors.hpp"

namespace contighyp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::ShiftUnderflow: return "ShiftUnderflow";
    case ErrorKind::LogarithmicCase: return "LogarithmicCase";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::NonFinite: return "NonFinite";
  }
  return "Error";
}

Bits bits_for_digits(int digits) {
  return static_cast<Bits>(std::ceil(digits * 3.3219280948873623)) + 8;
}

PrecisionContext::PrecisionContext(int digits, std::uint64_t term_cap)
    : digits_(digits), term_cap_(term_cap), bits_(bits_for_digits(digits + kExtraDigits)) {
  if (digits < kMinDigits || digits > kMaxDigits) {
    throw InvalidParameterError("digits must be in [" + std::to_string(kMinDigits) + ", " +
                                std::to_string(kMaxDigits) + "], got " + std::to_string(digits));
  }
  if (term_cap == 0) throw InvalidParameterError("term cap must be positive");
}

Real PrecisionContext::tol_rel() const { return Real::pow10(-(digits_ - kGuardDigits), kMagnitudeBits); }

Real PrecisionContext::series_tol() const { return Real::pow10(-(digits_ + kExtraDigits / 2), kMagnitudeBits); }

Real PrecisionContext::unit_roundoff() const { return Real::pow2(1 - bits_, kMagnitudeBits); }

}  // namespace contighyp
