#pragma once

#include <vector>

#include "contighyp/complex.hpp"
#include "contighyp/hyp2f1.hpp"
#include "contighyp/precision.hpp"

namespace contighyp {

/// F_{alpha,beta,gamma}(z) := 2F1(a + alpha, b + beta; c + gamma; z).
///
/// Shifts are signed: telescoping a branch whose leading shift is zero
/// produces factors with alpha = -1.
struct ShiftedParams {
  Complex a;
  Complex b;
  Complex c;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;

  Hyp2F1Params at(const Real& z) const;
  /// Throws InvalidParameterError for negative beta/gamma or alpha < -1, and
  /// PoleError when c + gamma is a non-positive integer.
  void validate(const PrecisionContext& ctx) const;

  friend bool operator==(const ShiftedParams&, const ShiftedParams&) = default;
};

Complex eval_shifted(const ShiftedParams& s, const Real& z, const PrecisionContext& ctx);

/// One application of F_{α,β,γ} = F_{α-1,β,γ} + (b+β)/(c+γ) z F_{α,β+1,γ+1}.
struct ContiguousStep {
  ShiftedParams lowered;
  ShiftedParams raised;
  Complex raised_coeff;
};

/// Throws ShiftUnderflowError when s.alpha < 1.
ContiguousStep apply_step(const ShiftedParams& s, const Real& z, const PrecisionContext& ctx);

struct StepCheck {
  Complex lhs;
  Complex lowered;
  Complex raised;  ///< raised_coeff * F_raised
  Real residual;   ///< |lhs - lowered - raised|
};

/// Evaluates every piece of the step identity at z.
StepCheck check_step(const ShiftedParams& s, const Real& z, const PrecisionContext& ctx);

/// Which side of the symmetric difference is being expanded:
/// First  is (a)_α (b)_β F_{α,β,0},
/// Second is (a)_β (b)_α F_{β,α,0}.
enum class Branch { First, Second };

const char* to_string(Branch branch) noexcept;

/// Parameters of D(z) = (a)_α(b)_β F(a+α, b+β; c; z) - (a)_β(b)_α F(a+β, b+α; c; z)
/// with k = a - b a non-negative integer.
struct SymmetricDiffParams {
  Complex a;
  Complex b;
  Complex c;
  int alpha = 0;
  int beta = 0;
  int k = 0;

  /// Validates and derives k. Throws InvalidParameterError when a - b is not
  /// a non-negative integer or a shift is negative, PoleError when a, b or c
  /// is a non-positive integer.
  static SymmetricDiffParams make(Complex a, Complex b, Complex c, int alpha, int beta, const PrecisionContext& ctx);

  /// s = a + b + α + β - c - 1, the exponent of (1 - z) in the limit.
  Complex exponent() const;
  /// Shift on the a-slot of the expanded function for this branch.
  int leading_shift(Branch branch) const { return branch == Branch::First ? alpha : beta; }
  /// Shift on the b-slot of the expanded function for this branch.
  int trailing_shift(Branch branch) const { return branch == Branch::First ? beta : alpha; }
  /// True when D vanishes identically: (a - b)(α - β) = 0.
  bool degenerate() const { return k == 0 || alpha == beta; }
};

/// z^index / (c)_index · (a)_p (b)_{q+index} · F_{p-1, q+index, index}
struct TelescopeTerm {
  int index = 0;
  /// (a)_p (b)_{q+index} / (c)_index; the z^index factor is kept symbolic.
  Complex coeff;
  ShiftedParams shifted;
};

/// (a)_p (b)_q F_{p,q,0} = Σ_{i<k} terms[i] + z^k/(c)_k (a)_p (b)_{q+k} F_{p,q+k,k}
struct TelescopeExpansion {
  Branch branch = Branch::First;
  Complex lhs_coeff;
  ShiftedParams lhs;
  std::vector<TelescopeTerm> terms;
  /// Power of z on the remainder; equals k.
  int remainder_power = 0;
  Complex remainder_coeff;
  ShiftedParams remainder;
};

/// The k-fold iteration of the step identity. For k = 0 the term list is
/// empty and the remainder is the left-hand side itself.
TelescopeExpansion telescope(const SymmetricDiffParams& d, Branch which, const PrecisionContext& ctx);

struct ExpansionValues {
  Complex lhs;
  std::vector<Complex> terms;  ///< full weighted values, z^i included
  Complex remainder;           ///< full weighted value, z^k included
  Complex total;               ///< left-to-right sum of terms, then remainder
  Real residual;               ///< |lhs - total|
};

ExpansionValues evaluate(const TelescopeExpansion& e, const Real& z, const PrecisionContext& ctx);

/// |remainder(First) - remainder(Second)| at z. Both equal
/// z^k/(c)_k Γ(a+α)Γ(a+β)/(Γ(a)Γ(b)) F(a+α, a+β; c+k; z) when b + k = a.
Real remainder_equality_check(const SymmetricDiffParams& d, const Real& z, const PrecisionContext& ctx);

struct SymmetricDifference {
  Complex value;
  Complex first;   ///< (a)_α (b)_β F(a+α, b+β; c; z)
  Complex second;  ///< (a)_β (b)_α F(a+β, b+α; c; z)
  Real abs_error;  ///< estimated absolute error of value
};

/// D(z), evaluated with log10(1/(1-z)) + 2 guard digits so the estimated
/// absolute error stays below tol_rel · max(|first|, |second|) · (1 - z).
/// Throws PrecisionExhaustedError if that contract cannot be met.
SymmetricDifference symmetric_difference_detailed(const SymmetricDiffParams& d, const Real& z,
                                                  const PrecisionContext& ctx);

Complex symmetric_difference(const SymmetricDiffParams& d, const Real& z, const PrecisionContext& ctx);

/// Digits needed to absorb the one-order cancellation in D at this z.
int cancellation_guard_digits(const Real& z);

/// z^n for a natural power.
Real pow_natural(const Real& z, int n);

}  // namespace contighyp
