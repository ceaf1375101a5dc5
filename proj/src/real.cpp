#include "contighyp/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "contighyp/errors.hpp"

namespace contighyp {

namespace {

Bits max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real(Bits bits) {
  mpfr_init2(value_, std::max<Bits>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Bits bits) {
  mpfr_init2(value_, std::max<Bits>(bits, MPFR_PREC_MIN));
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(double value, Bits bits) {
  mpfr_init2(value_, std::max<Bits>(bits, MPFR_PREC_MIN));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::parse(std::string_view text, Bits bits) {
  std::string buffer(text);
  if (buffer.empty()) throw ParseError("empty numeric literal");
  Real out(bits);
  char* end = nullptr;
  mpfr_strtofr(out.value_, buffer.c_str(), &end, 10, MPFR_RNDN);
  if (end != buffer.c_str() + buffer.size() || end == buffer.c_str() || !out.is_finite()) {
    throw ParseError("not a finite decimal literal: '" + buffer + "'");
  }
  // mpfr_strtofr accepts "@inf@" style tokens and hex prefixes; only plain
  // decimals are part of the grammar.
  for (char ch : buffer) {
    const bool ok = (ch >= '0' && ch <= '9') || ch == '.' || ch == 'e' || ch == 'E' || ch == '+' || ch == '-';
    if (!ok) throw ParseError("not a finite decimal literal: '" + buffer + "'");
  }
  return out;
}

Real Real::pi(Bits bits) {
  Real out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

Real Real::pow2(long exponent, Bits bits) {
  Real out(1L, bits);
  mpfr_mul_2si(out.value_, out.value_, exponent, MPFR_RNDN);
  return out;
}

Real Real::pow10(long exponent, Bits bits) {
  Real out(bits);
  mpfr_ui_pow_ui(out.value_, 10, static_cast<unsigned long>(std::labs(exponent)), MPFR_RNDN);
  if (exponent < 0) mpfr_ui_div(out.value_, 1, out.value_, MPFR_RNDN);
  return out;
}

Real Real::with_precision(Bits bits) const {
  Real out(bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

long Real::exponent() const noexcept {
  if (!mpfr_regular_p(value_)) return 0;
  return mpfr_get_exp(value_);
}

int Real::round_trip_digits(Bits bits) {
  return static_cast<int>(mpfr_get_str_ndigits(10, bits));
}

std::string Real::to_string(int significant) const {
  significant = std::max(significant, 2);
  if (is_zero()) {
    std::string out = mpfr_signbit(value_) ? "-0" : "0";
    if (significant > 1) out += "." + std::string(static_cast<std::size_t>(significant - 1), '0');
    return out + "e+00";
  }
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");

  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant), value_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);

  std::string out;
  if (digits.front() == '-') {
    out += '-';
    digits.erase(0, 1);
  }
  out += digits[0];
  if (digits.size() > 1) {
    out += '.';
    out.append(digits, 1, std::string::npos);
  }
  const long e = static_cast<long>(exp10) - 1;
  out += e < 0 ? "e-" : "e+";
  const std::string mag = std::to_string(std::labs(e));
  if (mag.size() < 2) out += '0';
  out += mag;
  return out;
}

std::string Real::to_string() const { return to_string(round_trip_digits(precision())); }

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  return out;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& lhs, const Real& rhs) {
  Real out(max_prec(lhs, rhs));
  mpfr_add(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator-(const Real& lhs, const Real& rhs) {
  Real out(max_prec(lhs, rhs));
  mpfr_sub(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& lhs, const Real& rhs) {
  Real out(max_prec(lhs, rhs));
  mpfr_mul(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator/(const Real& lhs, const Real& rhs) {
  Real out(max_prec(lhs, rhs));
  mpfr_div(out.value_, lhs.value_, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator+(const Real& lhs, long rhs) {
  Real out(lhs.precision());
  mpfr_add_si(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator-(const Real& lhs, long rhs) {
  Real out(lhs.precision());
  mpfr_sub_si(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator-(long lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_si_sub(out.value_, lhs, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& lhs, long rhs) {
  Real out(lhs.precision());
  mpfr_mul_si(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator/(const Real& lhs, long rhs) {
  Real out(lhs.precision());
  mpfr_div_si(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator/(long lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_si_div(out.value_, lhs, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator+(const Real& lhs, double rhs) {
  Real out(lhs.precision());
  mpfr_add_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator-(const Real& lhs, double rhs) {
  Real out(lhs.precision());
  mpfr_sub_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator-(double lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_d_sub(out.value_, lhs, rhs.value_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& lhs, double rhs) {
  Real out(lhs.precision());
  mpfr_mul_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

Real operator/(const Real& lhs, double rhs) {
  Real out(lhs.precision());
  mpfr_div_d(out.value_, lhs.value_, rhs, MPFR_RNDN);
  return out;
}

namespace {

std::partial_ordering from_cmp(int cmp) {
  if (cmp < 0) return std::partial_ordering::less;
  if (cmp > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

}  // namespace

std::partial_ordering operator<=>(const Real& lhs, const Real& rhs) {
  if (mpfr_unordered_p(lhs.value_, rhs.value_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp(lhs.value_, rhs.value_));
}

std::partial_ordering operator<=>(const Real& lhs, long rhs) {
  if (mpfr_nan_p(lhs.value_)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_si(lhs.value_, rhs));
}

std::partial_ordering operator<=>(const Real& lhs, double rhs) {
  if (mpfr_nan_p(lhs.value_) || std::isnan(rhs)) return std::partial_ordering::unordered;
  return from_cmp(mpfr_cmp_d(lhs.value_, rhs));
}

#define CONTIGHYP_UNARY(fn, impl)            \
  Real fn(const Real& x) {                   \
    Real out(x.precision());                 \
    impl(out.get(), x.get(), MPFR_RNDN);     \
    return out;                              \
  }

CONTIGHYP_UNARY(abs, mpfr_abs)
CONTIGHYP_UNARY(sqrt, mpfr_sqrt)
CONTIGHYP_UNARY(exp, mpfr_exp)
CONTIGHYP_UNARY(log, mpfr_log)
CONTIGHYP_UNARY(sin, mpfr_sin)
CONTIGHYP_UNARY(cos, mpfr_cos)

#undef CONTIGHYP_UNARY

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real round(const Real& x) {
  Real out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

Real atan2(const Real& y, const Real& x) {
  Real out(max_prec(y, x));
  mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
  return out;
}

Real hypot(const Real& x, const Real& y) {
  Real out(max_prec(x, y));
  mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

Real pow(const Real& base, const Real& exponent) {
  Real out(max_prec(base, exponent));
  mpfr_pow(out.get(), base.get(), exponent.get(), MPFR_RNDN);
  return out;
}

Real ldexp(const Real& x, long e) {
  Real out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
  return out;
}

Real max(const Real& x, const Real& y) { return x < y ? y : x; }
Real min(const Real& x, const Real& y) { return y < x ? y : x; }

double log2_abs(const Real& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double mant = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(mant)) + static_cast<double>(e);
}

}  // namespace contighyp
