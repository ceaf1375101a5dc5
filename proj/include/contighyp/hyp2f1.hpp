#pragma once

#include <cstdint>

#include "contighyp/complex.hpp"
#include "contighyp/precision.hpp"

namespace contighyp {

enum class Method { DirectSeries, NearOneConnection };

const char* to_string(Method method) noexcept;

/// One evaluation of 2F1(a, b; c; z) for real z in [0, 1).
struct Hyp2F1Params {
  Complex a;
  Complex b;
  Complex c;
  Real z;

  /// Throws PoleError when c is a non-positive integer, DomainError when z
  /// is outside [0, 1), NonFiniteError on NaN/inf inputs.
  void validate(const PrecisionContext& ctx) const;
};

struct EvalResult {
  Complex value;
  /// Estimated relative error; at most ctx.tol_rel() on return.
  Real est_rel_error;
  std::uint64_t terms_used = 0;
  Method method = Method::DirectSeries;
};

/// The term cap multiplier used when the connection formula is unavailable.
inline constexpr std::uint64_t kRaisedTermCapFactor = 4;

/// Partial sums of the defining series, stopped once the geometric tail
/// bound drops below the series tolerance. Precision is raised automatically
/// when rounding in a cancelling sum would break the tol_rel contract.
///
/// Throws NonConvergenceError at the context's term cap.
EvalResult eval_series(const Hyp2F1Params& p, const PrecisionContext& ctx);

/// Two-term connection formula in powers of 1 - z:
///
///   F(a,b;c;z) = A1 F(a, b; a+b-c+1; 1-z)
///              + A2 (1-z)^(c-a-b) F(c-a, c-b; c-a-b+1; 1-z)
///
/// with A1 = G(c)G(c-a-b)/(G(c-a)G(c-b)), A2 = G(c)G(a+b-c)/(G(a)G(b)).
/// Requires z > 1/2 and c - a - b away from the integers; throws
/// DomainError / LogarithmicCaseError otherwise.
EvalResult eval_near_one(const Hyp2F1Params& p, const PrecisionContext& ctx);

/// Dispatcher: direct series for z <= 1/2, connection formula above that,
/// direct series with a raised term cap when c - a - b is an integer.
EvalResult hyp2f1(const Hyp2F1Params& p, const PrecisionContext& ctx);

/// K = G(c)G(a+b-c) / (G(a)G(b)), so that F(a,b;c;z) ~ K (1-z)^(c-a-b)
/// as z -> 1-. Requires Re(a+b-c) > 0 (DomainError otherwise).
Complex leading_coeff_z1(const Complex& a, const Complex& b, const Complex& c, const PrecisionContext& ctx);

}  // namespace contighyp
