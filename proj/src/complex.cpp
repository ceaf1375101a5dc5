#include "contighyp/complex.hpp"

#include <algorithm>

#include "contighyp/errors.hpp"

namespace contighyp {

Complex::Complex(Real real_part, Real imag_part) : re(std::move(real_part)), im(std::move(imag_part)) {
  const Bits bits = std::max(re.precision(), im.precision());
  if (re.precision() != bits) re = re.with_precision(bits);
  if (im.precision() != bits) im = im.with_precision(bits);
}

Complex::Complex(Real real_part) : re(std::move(real_part)), im(re.precision()) {}

Complex Complex::parse(std::string_view text, Bits bits) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == ' '; }), s.end());
  if (s.empty()) throw ParseError("empty complex literal");

  if (s.back() != 'i') return Complex(Real::parse(s, bits));

  s.pop_back();
  // The split point is the last sign that is not the leading sign and not
  // part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    if (s.empty() || s == "+" || s == "-") throw ParseError("imaginary unit without coefficient: '" + std::string(text) + "'");
    return {Real(bits), Real::parse(s, bits)};
  }
  const std::string imag = s.substr(split);
  if (imag == "+" || imag == "-") throw ParseError("imaginary unit without coefficient: '" + std::string(text) + "'");
  return {Real::parse(s.substr(0, split), bits), Real::parse(imag, bits)};
}

std::string Complex::to_string(int significant) const {
  if (is_real()) return re.to_string(significant);
  std::string imag = im.to_string(significant);
  if (imag.front() != '-') imag.insert(imag.begin(), '+');
  return re.to_string(significant) + imag + "i";
}

Complex& Complex::operator+=(const Complex& rhs) { return *this = *this + rhs; }
Complex& Complex::operator-=(const Complex& rhs) { return *this = *this - rhs; }
Complex& Complex::operator*=(const Complex& rhs) { return *this = *this * rhs; }
Complex& Complex::operator/=(const Complex& rhs) { return *this = *this / rhs; }

Complex operator+(const Complex& lhs, const Complex& rhs) { return {lhs.re + rhs.re, lhs.im + rhs.im}; }
Complex operator-(const Complex& lhs, const Complex& rhs) { return {lhs.re - rhs.re, lhs.im - rhs.im}; }

Complex operator*(const Complex& lhs, const Complex& rhs) {
  if (rhs.im.is_zero()) return lhs * rhs.re;
  if (lhs.im.is_zero()) return lhs.re * rhs;
  return {lhs.re * rhs.re - lhs.im * rhs.im, lhs.re * rhs.im + lhs.im * rhs.re};
}

Complex operator/(const Complex& lhs, const Complex& rhs) {
  if (rhs.im.is_zero()) return lhs / rhs.re;
  const Real den = norm(rhs);
  return {(lhs.re * rhs.re + lhs.im * rhs.im) / den, (lhs.im * rhs.re - lhs.re * rhs.im) / den};
}

Complex operator+(const Complex& lhs, const Real& rhs) { return {lhs.re + rhs, lhs.im.with_precision(std::max(lhs.precision(), rhs.precision()))}; }
Complex operator-(const Complex& lhs, const Real& rhs) { return {lhs.re - rhs, lhs.im.with_precision(std::max(lhs.precision(), rhs.precision()))}; }
Complex operator-(const Real& lhs, const Complex& rhs) { return {lhs - rhs.re, (-rhs.im).with_precision(std::max(lhs.precision(), rhs.precision()))}; }
Complex operator*(const Complex& lhs, const Real& rhs) { return {lhs.re * rhs, lhs.im * rhs}; }
Complex operator*(const Real& lhs, const Complex& rhs) { return {lhs * rhs.re, lhs * rhs.im}; }
Complex operator/(const Complex& lhs, const Real& rhs) { return {lhs.re / rhs, lhs.im / rhs}; }

Complex operator+(const Complex& lhs, long rhs) { return {lhs.re + rhs, lhs.im}; }
Complex operator-(const Complex& lhs, long rhs) { return {lhs.re - rhs, lhs.im}; }
Complex operator-(long lhs, const Complex& rhs) { return {lhs - rhs.re, -rhs.im}; }
Complex operator*(const Complex& lhs, long rhs) { return {lhs.re * rhs, lhs.im * rhs}; }
Complex operator/(const Complex& lhs, long rhs) { return {lhs.re / rhs, lhs.im / rhs}; }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return hypot(z.re, z.im); }
Real abs1(const Complex& z) { return abs(z.re) + abs(z.im); }
Real arg(const Complex& z) { return atan2(z.im, z.re); }
Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex exp(const Complex& z) {
  const Real modulus = exp(z.re);
  if (z.im.is_zero()) return Complex(modulus);
  return {modulus * cos(z.im), modulus * sin(z.im)};
}

Complex log(const Complex& z) {
  if (z.im.is_zero() && z.re.sign() > 0) return Complex(log(z.re));
  return {log(abs(z)), arg(z)};
}

Complex pow(const Complex& base, const Complex& exponent) { return exp(exponent * log(base)); }

Complex pow(const Real& base, const Complex& exponent) { return exp(exponent * log(base)); }

Complex sin(const Complex& z) {
  // sin(x+iy) = sin x cosh y + i cos x sinh y
  const Real ey = exp(z.im);
  const Real emy = 1L / ey;
  return {sin(z.re) * (ey + emy) / 2L, cos(z.re) * (ey - emy) / 2L};
}

}  // namespace contighyp
