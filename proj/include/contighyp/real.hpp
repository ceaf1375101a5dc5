#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <string>
#include <string_view>

namespace contighyp {

using Bits = mpfr_prec_t;

/// Arbitrary-precision real backed by an MPFR number.
///
/// Each value carries its own precision. Binary operations round to the
/// larger of the operand precisions, so raising the precision of the inputs
/// raises the precision of everything computed from them. Scalar operands
/// (integers, doubles) are exact and do not affect the result precision.
class Real {
 public:
  static constexpr Bits kDefaultBits = 256;

  Real() : Real(kDefaultBits) {}
  explicit Real(Bits bits);
  Real(long value, Bits bits);
  Real(double value, Bits bits);
  template <std::integral I>
  Real(I value, Bits bits) : Real(static_cast<long>(value), bits) {}

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal literal ("1.25", "-3e-4"). Throws ParseError on
  /// anything else, including "inf" and "nan".
  static Real parse(std::string_view text, Bits bits);

  static Real pi(Bits bits);
  /// 2^exponent, exact.
  static Real pow2(long exponent, Bits bits);
  /// 10^exponent, correctly rounded.
  static Real pow10(long exponent, Bits bits);

  Bits precision() const noexcept { return mpfr_get_prec(value_); }
  /// Copy rounded (or exactly widened) to the given precision.
  Real with_precision(Bits bits) const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(value_, MPFR_RNDN); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; 0 for zero.
  long exponent() const noexcept;

  /// Scientific notation with `significant` digits, e.g. "1.500e+00".
  std::string to_string(int significant) const;
  /// Scientific notation with enough digits to round-trip at this precision.
  std::string to_string() const;
  /// Number of decimal digits `to_string()` emits for this precision.
  static int round_trip_digits(Bits bits);

  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  Real operator-() const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(const Real& lhs, const Real& rhs);
  friend Real operator-(const Real& lhs, const Real& rhs);
  friend Real operator*(const Real& lhs, const Real& rhs);
  friend Real operator/(const Real& lhs, const Real& rhs);

  friend Real operator+(const Real& lhs, long rhs);
  friend Real operator-(const Real& lhs, long rhs);
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator*(const Real& lhs, long rhs);
  friend Real operator/(const Real& lhs, long rhs);
  friend Real operator/(long lhs, const Real& rhs);
  friend Real operator+(const Real& lhs, double rhs);
  friend Real operator-(const Real& lhs, double rhs);
  friend Real operator-(double lhs, const Real& rhs);
  friend Real operator*(const Real& lhs, double rhs);
  friend Real operator/(const Real& lhs, double rhs);

  template <std::integral I>
  friend Real operator+(const Real& lhs, I rhs) { return lhs + static_cast<long>(rhs); }
  template <std::integral I>
  friend Real operator+(I lhs, const Real& rhs) { return rhs + static_cast<long>(lhs); }
  template <std::integral I>
  friend Real operator-(const Real& lhs, I rhs) { return lhs - static_cast<long>(rhs); }
  template <std::integral I>
  friend Real operator-(I lhs, const Real& rhs) { return static_cast<long>(lhs) - rhs; }
  template <std::integral I>
  friend Real operator*(const Real& lhs, I rhs) { return lhs * static_cast<long>(rhs); }
  template <std::integral I>
  friend Real operator*(I lhs, const Real& rhs) { return rhs * static_cast<long>(lhs); }
  template <std::integral I>
  friend Real operator/(const Real& lhs, I rhs) { return lhs / static_cast<long>(rhs); }
  template <std::integral I>
  friend Real operator/(I lhs, const Real& rhs) { return static_cast<long>(lhs) / rhs; }

  friend bool operator==(const Real& lhs, const Real& rhs) { return mpfr_equal_p(lhs.value_, rhs.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& lhs, const Real& rhs);
  friend bool operator==(const Real& lhs, long rhs) { return mpfr_cmp_si(lhs.value_, rhs) == 0; }
  friend std::partial_ordering operator<=>(const Real& lhs, long rhs);
  friend bool operator==(const Real& lhs, double rhs) { return mpfr_cmp_d(lhs.value_, rhs) == 0; }
  friend std::partial_ordering operator<=>(const Real& lhs, double rhs);
  template <std::integral I>
  friend bool operator==(const Real& lhs, I rhs) { return lhs == static_cast<long>(rhs); }
  template <std::integral I>
  friend std::partial_ordering operator<=>(const Real& lhs, I rhs) { return lhs <=> static_cast<long>(rhs); }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real hypot(const Real& x, const Real& y);
Real pow(const Real& base, const Real& exponent);
Real floor(const Real& x);
/// Nearest integer, ties away from zero.
Real round(const Real& x);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real max(const Real& x, const Real& y);
Real min(const Real& x, const Real& y);

/// log2 |x| as a double; -inf for zero. Never overflows.
double log2_abs(const Real& x);

}  // namespace contighyp
