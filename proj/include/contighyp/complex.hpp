#pragma once

#include <string>
#include <string_view>

#include "contighyp/real.hpp"

namespace contighyp {

/// Complex number over `Real`. Both parts share one precision.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  explicit Complex(Bits bits) : re(bits), im(bits) {}
  Complex(Real real_part, Real imag_part);
  explicit Complex(Real real_part);
  Complex(long real_part, Bits bits) : re(real_part, bits), im(bits) {}
  Complex(double real_part, Bits bits) : re(real_part, bits), im(bits) {}
  template <std::integral I>
  Complex(I real_part, Bits bits) : Complex(static_cast<long>(real_part), bits) {}
  Complex(double real_part, double imag_part, Bits bits) : re(real_part, bits), im(imag_part, bits) {}

  /// Parses "x", "yi", "x+yi" or "x-yi" with decimal reals.
  static Complex parse(std::string_view text, Bits bits);

  Bits precision() const noexcept { return re.precision(); }
  Complex with_precision(Bits bits) const { return {re.with_precision(bits), im.with_precision(bits)}; }

  bool is_real() const noexcept { return im.is_zero(); }
  bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
  bool is_finite() const noexcept { return re.is_finite() && im.is_finite(); }

  /// "re+imi" with `significant` digits per part, or just "re" when real.
  std::string to_string(int significant) const;

  Complex operator-() const { return {-re, -im}; }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);

  friend bool operator==(const Complex& lhs, const Complex& rhs) { return lhs.re == rhs.re && lhs.im == rhs.im; }
};

Complex operator+(const Complex& lhs, const Complex& rhs);
Complex operator-(const Complex& lhs, const Complex& rhs);
Complex operator*(const Complex& lhs, const Complex& rhs);
Complex operator/(const Complex& lhs, const Complex& rhs);

Complex operator+(const Complex& lhs, const Real& rhs);
Complex operator-(const Complex& lhs, const Real& rhs);
Complex operator-(const Real& lhs, const Complex& rhs);
Complex operator*(const Complex& lhs, const Real& rhs);
Complex operator*(const Real& lhs, const Complex& rhs);
Complex operator/(const Complex& lhs, const Real& rhs);

Complex operator+(const Complex& lhs, long rhs);
Complex operator-(const Complex& lhs, long rhs);
Complex operator-(long lhs, const Complex& rhs);
Complex operator*(const Complex& lhs, long rhs);
Complex operator/(const Complex& lhs, long rhs);

/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
/// |re| + |im|; within a factor sqrt(2) of abs() and cheaper.
Real abs1(const Complex& z);
Real arg(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch, arg in (-pi, pi].
Complex log(const Complex& z);
/// Principal value base^exponent = exp(exponent * log(base)).
Complex pow(const Complex& base, const Complex& exponent);
/// base^exponent for real base > 0.
Complex pow(const Real& base, const Complex& exponent);
Complex sin(const Complex& z);

}  // namespace contighyp
