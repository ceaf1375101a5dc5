#include "contighyp/hyp2f1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "contighyp/errors.hpp"
#include "contighyp/gamma.hpp"

namespace contighyp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxPrecisionAttempts = 4;

double log2_abs(const Complex& z) {
  if (z.re.is_zero()) return contighyp::log2_abs(z.im);
  if (z.im.is_zero()) return contighyp::log2_abs(z.re);
  long er = 0;
  long ei = 0;
  const double mr = mpfr_get_d_2exp(&er, z.re.get(), MPFR_RNDN);
  const double mi = mpfr_get_d_2exp(&ei, z.im.get(), MPFR_RNDN);
  const long top = std::max(er, ei);
  return std::log2(std::hypot(std::ldexp(mr, static_cast<int>(std::max(er - top, -1000L))),
                              std::ldexp(mi, static_cast<int>(std::max(ei - top, -1000L))))) +
         static_cast<double>(top);
}

double log2_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

Real from_log2(double value) {
  if (value == kNegInf) return Real(PrecisionContext::kMagnitudeBits);
  const double whole = std::floor(value);
  return ldexp(Real(std::exp2(value - whole), PrecisionContext::kMagnitudeBits), static_cast<long>(whole));
}

double magnitude(const Complex& z) { return abs1(z).to_double(); }

struct SeriesSum {
  Complex sum;
  /// log2 of the absolute error bound (truncation + rounding).
  double log2_error = kNegInf;
  std::uint64_t terms = 1;
};

/// sum_n (a)_n (b)_n / (c)_n x^n / n! at `bits`, stopped by the tail bound
/// |t_n| rho / (1 - rho) < target |sum|, rho the largest term ratio seen over
/// the last five terms (and never below x, the limiting ratio).
SeriesSum sum_series(const Complex& a0, const Complex& b0, const Complex& c0, const Real& x0, Bits bits,
                     double log2_target, std::uint64_t cap) {
  const Complex a = a0.with_precision(bits);
  const Complex b = b0.with_precision(bits);
  const Complex c = c0.with_precision(bits);
  const Real x = x0.with_precision(bits);

  SeriesSum out{Complex(Real(1L, bits)), kNegInf, 1};
  if (x.is_zero()) return out;

  const double log2_x = contighyp::log2_abs(x);
  const double log2_unit = 1.0 - static_cast<double>(bits);
  // Ratios are only trusted once n is past every parameter's magnitude.
  const double reach = std::max({magnitude(a), magnitude(b), magnitude(c)});
  const auto n_min = static_cast<std::uint64_t>(std::ceil(reach)) + 2;

  Complex term = out.sum;
  double rounding = 2.0;  // log2 of 4 |t_0|
  double previous = 0.0;
  std::array<double, 5> ratios{};
  std::size_t filled = 0;

  for (std::uint64_t n = 0;; ++n) {
    if (n + 1 >= cap) {
      throw NonConvergenceError("2F1 series not converged after " + std::to_string(cap) + " terms at z = " +
                                x.to_string(12));
    }
    const long k = static_cast<long>(n);
    term *= (a + k) * (b + k);
    term /= (c + k) * (k + 1);
    term = term * x;
    if (term.is_zero()) {
      out.terms = n + 1;
      out.log2_error = log2_unit + rounding;
      return out;
    }
    out.sum += term;
    out.terms = n + 2;

    const double current = log2_abs(term);
    ratios[n % ratios.size()] = current - previous;
    filled = std::min(filled + 1, ratios.size());
    previous = current;
    // Term n+1 carries about 6(n+1) roundings from the recurrence.
    rounding = log2_add(rounding, current + std::log2(6.0 * static_cast<double>(n + 1) + 4.0));

    if (n + 1 < n_min || filled < ratios.size()) continue;
    const double log2_rho = std::max(*std::max_element(ratios.begin(), ratios.end()), log2_x);
    if (log2_rho >= 0.0) continue;
    const double rho = std::exp2(log2_rho);
    const double tail = current + std::log2(rho / (1.0 - rho));
    if (tail <= log2_target + log2_abs(out.sum)) {
      out.log2_error = log2_add(tail, log2_unit + rounding);
      return out;
    }
  }
}

std::pair<Complex, Complex> canonical_order(const Complex& a, const Complex& b) {
  if (b.re < a.re || (b.re == a.re && b.im < a.im)) return {b, a};
  return {a, b};
}

Bits input_bits(const Hyp2F1Params& p, const PrecisionContext& ctx) {
  return std::max({ctx.bits(), p.a.precision(), p.b.precision(), p.c.precision(), p.z.precision()});
}

double log2_of(const Real& x) { return contighyp::log2_abs(x); }

EvalResult series_with_cap(const Hyp2F1Params& p, const PrecisionContext& ctx, std::uint64_t cap) {
  p.validate(ctx);
  const auto [a, b] = canonical_order(p.a, p.b);
  const Bits out_bits = input_bits(p, ctx);
  if (p.z.is_zero()) return {Complex(Real(1L, out_bits)), Real(PrecisionContext::kMagnitudeBits), 1, Method::DirectSeries};

  const double log2_tol = log2_of(ctx.tol_rel());
  const double log2_target = log2_of(ctx.series_tol());
  Bits bits = out_bits;
  double log2_rel = kNegInf;
  for (int attempt = 0; attempt < kMaxPrecisionAttempts; ++attempt) {
    SeriesSum s = sum_series(a, b, p.c, p.z, bits, log2_target, cap);
    log2_rel = s.log2_error - log2_abs(s.sum);
    if (log2_rel <= log2_tol) {
      const double total = log2_add(log2_rel, 1.0 - static_cast<double>(out_bits));
      return {s.sum.with_precision(out_bits), from_log2(total), s.terms, Method::DirectSeries};
    }
    if (!std::isfinite(log2_rel)) break;
    bits += static_cast<Bits>(std::ceil(log2_rel - log2_target)) + 32;
  }
  throw PrecisionExhaustedError("direct series lost too much to cancellation (estimated relative error 2^" +
                                std::to_string(static_cast<long>(log2_rel)) + ")");
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::DirectSeries: return "DirectSeries";
    case Method::NearOneConnection: return "NearOneConnection";
  }
  return "?";
}

void Hyp2F1Params::validate(const PrecisionContext& ctx) const {
  if (!a.is_finite() || !b.is_finite() || !c.is_finite() || !z.is_finite()) {
    throw NonFiniteError("2F1 parameters must be finite");
  }
  if (const auto pole = nonpositive_integer_near(c, ctx.tol_rel())) {
    throw PoleError("c must not be a non-positive integer (c = " + std::to_string(*pole) + ")");
  }
  if (z.sign() < 0 || z >= 1L) throw DomainError("z must lie in [0, 1), got " + z.to_string(20));
}

EvalResult eval_series(const Hyp2F1Params& p, const PrecisionContext& ctx) {
  return series_with_cap(p, ctx, ctx.term_cap());
}

EvalResult eval_near_one(const Hyp2F1Params& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  if (p.z <= 0.5) throw DomainError("connection formula needs 1 - z < 1/2, got z = " + p.z.to_string(20));
  const auto [a_in, b_in] = canonical_order(p.a, p.b);
  const Bits out_bits = input_bits(p, ctx);
  {
    const Complex m = p.c - a_in - b_in;
    if (const auto n = integer_near(m, ctx.tol_rel())) {
      throw LogarithmicCaseError("c - a - b = " + std::to_string(*n) + " is an integer");
    }
  }

  const double log2_tol = log2_of(ctx.tol_rel());
  const double log2_target = log2_of(ctx.series_tol());
  Bits bits = out_bits;
  double log2_rel = kNegInf;
  for (int attempt = 0; attempt < kMaxPrecisionAttempts; ++attempt) {
    const Complex a = a_in.with_precision(bits);
    const Complex b = b_in.with_precision(bits);
    const Complex c = p.c.with_precision(bits);
    const Real w = 1L - p.z.with_precision(bits);
    const Complex m = c - a - b;
    const double log2_unit = 1.0 - static_cast<double>(bits);

    const std::vector<Complex> num1{c, m};
    const std::vector<Complex> den1{c - a, c - b};
    const std::vector<Complex> num2{c, -m};
    const std::vector<Complex> den2{a, b};
    const GammaRatio coeff1 = gamma_ratio_estimate(num1, den1, ctx);
    const GammaRatio coeff2 = gamma_ratio_estimate(num2, den2, ctx);

    Complex value(bits);
    double log2_error = kNegInf;
    std::uint64_t terms = 0;

    if (!coeff1.value.is_zero()) {
      const SeriesSum s1 = sum_series(a, b, 1L - m, w, bits, log2_target, ctx.term_cap());
      const Complex t1 = coeff1.value * s1.sum;
      value += t1;
      const double rel = log2_add(s1.log2_error - log2_abs(s1.sum), log2_add(log2_of(coeff1.rel_error), log2_unit + 1.0));
      log2_error = log2_add(log2_error, log2_abs(t1) + rel);
      terms += s1.terms;
    }
    if (!coeff2.value.is_zero()) {
      const SeriesSum s2 = sum_series(c - a, c - b, m + 1L, w, bits, log2_target, ctx.term_cap());
      const Complex power = pow(w, m);
      const Complex t2 = coeff2.value * power * s2.sum;
      value += t2;
      // exp(m log w) inherits the absolute error of its argument.
      const double power_rel = log2_unit + std::log2(magnitude(m) * std::fabs(log2_of(w)) + 4.0);
      double rel = log2_add(s2.log2_error - log2_abs(s2.sum), log2_of(coeff2.rel_error));
      rel = log2_add(rel, log2_add(power_rel, log2_unit + 2.0));
      log2_error = log2_add(log2_error, log2_abs(t2) + rel);
      terms += s2.terms;
    }
    if (terms == 0) terms = 1;

    log2_rel = log2_error - log2_abs(value);
    if (log2_rel <= log2_tol) {
      const double total = log2_add(log2_rel, 1.0 - static_cast<double>(out_bits));
      return {value.with_precision(out_bits), from_log2(total), terms, Method::NearOneConnection};
    }
    if (!std::isfinite(log2_rel)) break;
    bits += static_cast<Bits>(std::ceil(log2_rel - log2_target)) + 32;
  }
  throw PrecisionExhaustedError("connection formula lost too much to cancellation (estimated relative error 2^" +
                                std::to_string(static_cast<long>(log2_rel)) + ")");
}

EvalResult hyp2f1(const Hyp2F1Params& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  if (p.z <= 0.5) return eval_series(p, ctx);
  if (!integer_near(p.c - p.a - p.b, ctx.tol_rel())) return eval_near_one(p, ctx);
  return series_with_cap(p, ctx, ctx.term_cap() * kRaisedTermCapFactor);
}

Complex leading_coeff_z1(const Complex& a, const Complex& b, const Complex& c, const PrecisionContext& ctx) {
  const Complex excess = a + b - c;
  if (excess.re.sign() <= 0) {
    throw DomainError("leading z->1 coefficient needs Re(a+b-c) > 0, got " + excess.re.to_string(12));
  }
  return gamma_ratio({c, excess}, {a, b}, ctx);
}

}  // namespace contighyp
