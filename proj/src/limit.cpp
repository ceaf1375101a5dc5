#include "contighyp/limit.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "contighyp/errors.hpp"
#include "contighyp/gamma.hpp"

namespace contighyp {

namespace {

struct Sample {
  Complex value;
  Real est_error;
};

void require_hypothesis(const SymmetricDiffParams& p) {
  const Complex s = p.exponent();
  if (s.re.sign() <= 0) {
    throw DomainError("theorem hypothesis Re(a+b+alpha+beta-c-1) > 0 violated: Re(s) = " + s.re.to_string(12));
  }
}

Real unit_roundoff(Bits bits) { return Real::pow2(1 - static_cast<long>(bits), PrecisionContext::kMagnitudeBits); }

Real magnitude(const Complex& z) { return abs(z).with_precision(PrecisionContext::kMagnitudeBits); }

Real point_on_segment(const Real& eps, const PrecisionContext& ctx) {
  return 1L - eps.with_precision(std::max(ctx.bits(), eps.precision()));
}

/// Common scan: sample over the schedule, keep a running extrapolant and
/// compare the last one with `limit`.
LimitReport scan(const LimitExperiment& e, const Complex& limit, const Real& target,
                 const std::function<Sample(const Real&)>& sample) {
  const PrecisionContext& ctx = e.ctx;
  LimitReport report;
  report.rows.reserve(e.eps_schedule.size());
  std::vector<Real> eps;
  std::vector<Complex> values;
  for (const Real& x : e.eps_schedule) {
    const Sample s = sample(x);
    eps.push_back(x);
    values.push_back(s.value);
    const std::size_t from = eps.size() > e.window ? eps.size() - e.window : 0;
    const std::span<const Real> tail_eps(eps.begin() + static_cast<std::ptrdiff_t>(from), eps.end());
    const std::span<const Complex> tail_values(values.begin() + static_cast<std::ptrdiff_t>(from), values.end());
    report.rows.push_back({x, s.value, s.est_error, extrapolate_to_zero(tail_eps, tail_values, e.basis).with_precision(ctx.bits())});
  }

  report.extrapolated = report.rows.back().running;
  report.rhs = limit.with_precision(ctx.bits());
  report.target = target;
  report.abs_err = magnitude(report.extrapolated - report.rhs);
  report.spread = report.rows.size() > 1
                      ? magnitude(report.rows.back().running - report.rows[report.rows.size() - 2].running)
                      : Real(PrecisionContext::kMagnitudeBits);
  report.observed_order = observed_order(eps, values);
  if (report.rhs.is_zero()) {
    const Real absolute = Real::pow10(-static_cast<long>(ctx.digits() / 2), PrecisionContext::kMagnitudeBits);
    report.rel_err = report.abs_err;
    report.converged = report.abs_err <= absolute;
    for (const LimitRow& row : report.rows) report.converged = report.converged && magnitude(row.value) <= absolute;
  } else {
    report.rel_err = report.abs_err / magnitude(report.rhs);
    report.converged = report.rel_err <= target;
  }
  return report;
}

bool near_integer_exponent(const SymmetricDiffParams& p) {
  return integer_near(p.exponent(), Real(kIntegerExponentWindow, PrecisionContext::kMagnitudeBits)).has_value();
}

}  // namespace

const char* to_string(IntegerExponentPolicy policy) noexcept {
  switch (policy) {
    case IntegerExponentPolicy::Perturb: return "perturb";
    case IntegerExponentPolicy::DirectSeries: return "direct-series";
  }
  return "?";
}

std::vector<Real> LimitExperiment::default_schedule(Bits bits) {
  std::vector<Real> out;
  for (long k = 4; k <= 22; ++k) out.push_back(Real::pow2(-k, bits));
  return out;
}

std::vector<Real> LimitExperiment::halving_schedule(const Real& eps_max, const Real& eps_min) {
  if (eps_min.sign() <= 0 || eps_min >= eps_max) {
    throw InvalidParameterError("schedule needs 0 < eps_min < eps_max");
  }
  std::vector<Real> out;
  for (Real x = eps_max; x >= eps_min; x = x / 2L) out.push_back(x);
  return out;
}

void LimitExperiment::validate() const {
  require_hypothesis(params);
  if (eps_schedule.empty()) throw InvalidParameterError("epsilon schedule is empty");
  if (window == 0) throw InvalidParameterError("extrapolation window must be positive");
  if (!(eps_schedule.front() < 0.5)) throw InvalidParameterError("epsilon schedule must stay below 1/2");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (eps_schedule[i].sign() <= 0) throw InvalidParameterError("epsilon schedule must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1])) {
      throw InvalidParameterError("epsilon schedule must be strictly decreasing");
    }
  }
  if (!(c_offset > 0.0) || !std::isfinite(c_offset)) throw InvalidParameterError("c offset must be positive");
}

Complex theorem_rhs(const SymmetricDiffParams& p, const PrecisionContext& ctx) {
  require_hypothesis(p);
  const Bits bits = std::max({ctx.bits(), p.a.precision(), p.b.precision(), p.c.precision()});
  if (p.degenerate()) return Complex(bits);
  return gamma_ratio({p.c, p.exponent()}, {p.a, p.b}, ctx) * static_cast<long>(p.k) *
         static_cast<long>(p.alpha - p.beta);
}

Complex scaled_difference(const SymmetricDiffParams& p, const Real& eps, const PrecisionContext& ctx) {
  return pow(eps, p.exponent()) * symmetric_difference(p, point_on_segment(eps, ctx), ctx);
}

SymmetricDiffParams effective_params(const LimitExperiment& e, bool* perturbed) {
  const bool shift = e.integer_policy == IntegerExponentPolicy::Perturb && !e.params.degenerate() &&
                     near_integer_exponent(e.params);
  if (perturbed) *perturbed = shift;
  if (!shift) return e.params;
  const Real offset = Real(e.c_offset, PrecisionContext::kMagnitudeBits).with_precision(e.params.c.precision());
  return SymmetricDiffParams::make(e.params.a, e.params.b, e.params.c + offset, e.params.alpha, e.params.beta, e.ctx);
}

LimitReport run_limit_scan(const LimitExperiment& e, const Real& target_rel_err) {
  e.validate();
  bool perturbed = false;
  const SymmetricDiffParams d = effective_params(e, &perturbed);
  require_hypothesis(d);
  const PrecisionContext& ctx = e.ctx;
  const Complex s = d.exponent();
  LimitReport report = scan(e, theorem_rhs(d, ctx), target_rel_err, [&](const Real& eps) {
    const SymmetricDifference diff = symmetric_difference_detailed(d, point_on_segment(eps, ctx), ctx);
    const Complex scale = pow(eps, s);
    const Complex value = (scale * diff.value).with_precision(ctx.bits());
    return Sample{value, magnitude(scale) * diff.abs_error + magnitude(value) * unit_roundoff(ctx.bits()) * 8L};
  });
  report.perturbed = perturbed;
  report.c_used = d.c;
  return report;
}

Complex per_term_limit(const SymmetricDiffParams& p, Branch which, const PrecisionContext& ctx) {
  require_hypothesis(p);
  const Complex lead = p.a + static_cast<long>(p.leading_shift(which) - 1);
  if (lead.is_zero()) throw InvalidParameterError("per-term asymptotic undefined: a + shift - 1 = 0");
  return lead * gamma_ratio({p.c, p.exponent()}, {p.a, p.b}, ctx);
}

Complex scaled_term(const SymmetricDiffParams& p, int i, Branch which, const Real& eps, const PrecisionContext& ctx) {
  if (i < 0 || i >= p.k) {
    throw InvalidParameterError("term index " + std::to_string(i) + " outside [0, " + std::to_string(p.k - 1) + "]");
  }
  const TelescopeExpansion e = telescope(p, which, ctx);
  const TelescopeTerm& t = e.terms[static_cast<std::size_t>(i)];
  const Real z = point_on_segment(eps, ctx);
  return pow(eps, p.exponent()) * t.coeff * pow_natural(z, t.index) * eval_shifted(t.shifted, z, ctx);
}

LimitReport per_term_limit_check(const LimitExperiment& e, int i, Branch which, const Real& target_rel_err) {
  e.validate();
  bool perturbed = false;
  const SymmetricDiffParams d = effective_params(e, &perturbed);
  if (i < 0 || i >= d.k) {
    throw InvalidParameterError("term index " + std::to_string(i) + " outside [0, " + std::to_string(d.k - 1) + "]");
  }
  const PrecisionContext& ctx = e.ctx;
  const Complex s = d.exponent();
  const TelescopeExpansion expansion = telescope(d, which, ctx);
  const TelescopeTerm& term = expansion.terms[static_cast<std::size_t>(i)];
  LimitReport report = scan(e, per_term_limit(d, which, ctx), target_rel_err, [&](const Real& eps) {
    const Real z = point_on_segment(eps, ctx);
    const EvalResult f = hyp2f1(term.shifted.at(z), ctx);
    const Complex value = (pow(eps, s) * term.coeff * pow_natural(z, term.index) * f.value).with_precision(ctx.bits());
    return Sample{value, magnitude(value) * (f.est_rel_error + unit_roundoff(ctx.bits()) * 16L)};
  });
  report.perturbed = perturbed;
  report.c_used = d.c;
  return report;
}

}  // namespace contighyp
