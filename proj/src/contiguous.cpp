#include "contighyp/contiguous.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "contighyp/errors.hpp"
#include "contighyp/gamma.hpp"

namespace contighyp {

namespace {

constexpr int kMaxTelescopeLength = 100000;

Complex poch(const Complex& a, int n, const PrecisionContext& ctx) {
  return pochhammer(a, static_cast<std::uint64_t>(n), ctx);
}

Bits params_bits(const SymmetricDiffParams& d, const PrecisionContext& ctx) {
  return std::max({ctx.bits(), d.a.precision(), d.b.precision(), d.c.precision()});
}

std::string shifts_text(const ShiftedParams& s) {
  return "(" + std::to_string(s.alpha) + ", " + std::to_string(s.beta) + ", " + std::to_string(s.gamma) + ")";
}

}  // namespace

Hyp2F1Params ShiftedParams::at(const Real& z) const { return {a + alpha, b + beta, c + gamma, z}; }

void ShiftedParams::validate(const PrecisionContext& ctx) const {
  if (alpha < -1 || beta < 0 || gamma < 0) throw InvalidParameterError("shifts must be natural numbers, got " + shifts_text(*this));
  if (const auto pole = nonpositive_integer_near(c + gamma, ctx.tol_rel())) {
    throw PoleError("c + gamma must not be a non-positive integer (c + gamma = " + std::to_string(*pole) + ")");
  }
}

Complex eval_shifted(const ShiftedParams& s, const Real& z, const PrecisionContext& ctx) {
  s.validate(ctx);
  return hyp2f1(s.at(z), ctx).value;
}

ContiguousStep apply_step(const ShiftedParams& s, const Real& z, const PrecisionContext& ctx) {
  if (s.alpha < 1) throw ShiftUnderflowError("the step identity needs alpha >= 1, got shifts " + shifts_text(s));
  s.validate(ctx);
  ShiftedParams lowered = s;
  --lowered.alpha;
  ShiftedParams raised = s;
  ++raised.beta;
  ++raised.gamma;
  const Complex coeff = (s.b + s.beta) * z / (s.c + s.gamma);
  return {lowered, raised, coeff};
}

StepCheck check_step(const ShiftedParams& s, const Real& z, const PrecisionContext& ctx) {
  const ContiguousStep step = apply_step(s, z, ctx);
  StepCheck out{eval_shifted(s, z, ctx), eval_shifted(step.lowered, z, ctx),
                step.raised_coeff * eval_shifted(step.raised, z, ctx), Real(ctx.bits())};
  out.residual = abs(out.lhs - out.lowered - out.raised);
  return out;
}

const char* to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::First: return "First";
    case Branch::Second: return "Second";
  }
  return "?";
}

SymmetricDiffParams SymmetricDiffParams::make(Complex a, Complex b, Complex c, int alpha, int beta,
                                              const PrecisionContext& ctx) {
  if (!a.is_finite() || !b.is_finite() || !c.is_finite()) throw NonFiniteError("parameters must be finite");
  if (alpha < 0 || beta < 0) {
    throw InvalidParameterError("alpha and beta must be natural numbers, got " + std::to_string(alpha) + ", " +
                                std::to_string(beta));
  }
  const auto k = integer_near(a - b, ctx.tol_rel());
  if (!k || *k < 0) {
    throw InvalidParameterError("a - b must be a real non-negative integer, got " + (a - b).to_string(20));
  }
  if (*k > kMaxTelescopeLength) throw InvalidParameterError("a - b = " + std::to_string(*k) + " is too large");
  for (const auto& [name, value] : {std::pair{"a", &a}, std::pair{"b", &b}, std::pair{"c", &c}}) {
    if (const auto pole = nonpositive_integer_near(*value, ctx.tol_rel())) {
      throw PoleError(std::string(name) + " must not be a non-positive integer (got " + std::to_string(*pole) + ")");
    }
  }
  return {std::move(a), std::move(b), std::move(c), alpha, beta, static_cast<int>(*k)};
}

Complex SymmetricDiffParams::exponent() const { return a + b + static_cast<long>(alpha + beta) - c - 1L; }

TelescopeExpansion telescope(const SymmetricDiffParams& d, Branch which, const PrecisionContext& ctx) {
  const int p = d.leading_shift(which);
  const int q = d.trailing_shift(which);
  const Complex ap = poch(d.a, p, ctx);

  TelescopeExpansion out;
  out.branch = which;
  out.lhs = {d.a, d.b, d.c, p, q, 0};
  out.lhs_coeff = ap * poch(d.b, q, ctx);
  out.terms.reserve(static_cast<std::size_t>(d.k));

  // (b)_{q+i} and (c)_i are carried along the iteration.
  Complex b_rising = poch(d.b, q, ctx);
  Complex c_rising(Real(1L, params_bits(d, ctx)));
  for (int i = 0; i < d.k; ++i) {
    out.terms.push_back({i, ap * b_rising / c_rising, {d.a, d.b, d.c, p - 1, q + i, i}});
    b_rising *= d.b + static_cast<long>(q + i);
    c_rising *= d.c + static_cast<long>(i);
  }
  out.remainder_power = d.k;
  out.remainder_coeff = ap * b_rising / c_rising;
  out.remainder = {d.a, d.b, d.c, p, q + d.k, d.k};
  return out;
}

ExpansionValues evaluate(const TelescopeExpansion& e, const Real& z, const PrecisionContext& ctx) {
  ExpansionValues out{e.lhs_coeff * eval_shifted(e.lhs, z, ctx), {}, Complex(ctx.bits()), Complex(ctx.bits()),
                      Real(ctx.bits())};
  out.terms.reserve(e.terms.size());
  for (const TelescopeTerm& t : e.terms) {
    out.terms.push_back(t.coeff * pow_natural(z, t.index) * eval_shifted(t.shifted, z, ctx));
    out.total += out.terms.back();
  }
  out.remainder = e.remainder_coeff * pow_natural(z, e.remainder_power) * eval_shifted(e.remainder, z, ctx);
  out.total += out.remainder;
  out.residual = abs(out.lhs - out.total);
  return out;
}

Real remainder_equality_check(const SymmetricDiffParams& d, const Real& z, const PrecisionContext& ctx) {
  const TelescopeExpansion first = telescope(d, Branch::First, ctx);
  const TelescopeExpansion second = telescope(d, Branch::Second, ctx);
  const Real zk = pow_natural(z, d.k);
  const Complex r1 = first.remainder_coeff * zk * eval_shifted(first.remainder, z, ctx);
  const Complex r2 = second.remainder_coeff * zk * eval_shifted(second.remainder, z, ctx);
  return abs(r1 - r2);
}

int cancellation_guard_digits(const Real& z) {
  const double w = (1L - z).to_double();
  return static_cast<int>(std::ceil(-std::log10(w))) + 2;
}

SymmetricDifference symmetric_difference_detailed(const SymmetricDiffParams& d, const Real& z,
                                                  const PrecisionContext& ctx) {
  if (z.sign() < 0 || z >= 1L) throw DomainError("z must lie in [0, 1), got " + z.to_string(20));
  const Bits out_bits = std::max(params_bits(d, ctx), z.precision());
  if (d.degenerate()) {
    const Complex zero(out_bits);
    return {zero, zero, zero, Real(PrecisionContext::kMagnitudeBits)};
  }

  const PrecisionContext fine = ctx.with_digits(ctx.digits() + cancellation_guard_digits(z));
  const EvalResult f1 = hyp2f1({d.a + d.alpha, d.b + d.beta, d.c, z}, fine);
  const EvalResult f2 = hyp2f1({d.a + d.beta, d.b + d.alpha, d.c, z}, fine);
  const Complex t1 = poch(d.a, d.alpha, fine) * poch(d.b, d.beta, fine) * f1.value;
  const Complex t2 = poch(d.a, d.beta, fine) * poch(d.b, d.alpha, fine) * f2.value;
  const Complex value = t1 - t2;

  // Pochhammer products round once per factor; the final subtraction and
  // output rounding once more.
  const Real unit = Real::pow2(1 - static_cast<long>(fine.bits()), PrecisionContext::kMagnitudeBits);
  const long factors = 2L * (d.alpha + d.beta) + 4L;
  const Real e1 = f1.est_rel_error + unit * factors;
  const Real e2 = f2.est_rel_error + unit * factors;
  const Real out_unit = Real::pow2(1 - static_cast<long>(out_bits), PrecisionContext::kMagnitudeBits);
  Real abs_error = abs(t1) * e1 + abs(t2) * e2 + abs(value) * out_unit;
  abs_error = abs_error.with_precision(PrecisionContext::kMagnitudeBits);

  const Real scale = max(abs(t1), abs(t2));
  const Real budget = ctx.tol_rel() * scale * (1L - z);
  if (abs_error > budget) {
    throw PrecisionExhaustedError("symmetric difference error estimate " + abs_error.to_string(3) +
                                  " exceeds the cancellation budget " + budget.to_string(3));
  }
  return {value.with_precision(out_bits), t1.with_precision(out_bits), t2.with_precision(out_bits), abs_error};
}

Complex symmetric_difference(const SymmetricDiffParams& d, const Real& z, const PrecisionContext& ctx) {
  return symmetric_difference_detailed(d, z, ctx).value;
}

Real pow_natural(const Real& z, int n) {
  Real out(z.precision());
  mpfr_pow_ui(out.get(), z.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  return out;
}

}  // namespace contighyp
