#pragma once

#include <optional>
#include <span>
#include <vector>

#include "contighyp/contiguous.hpp"
#include "contighyp/extrapolation.hpp"

namespace contighyp {

/// How to proceed when s = a + b + α + β - c - 1 is (nearly) an integer and
/// every F in the expansion sits in the logarithmic connection case.
enum class IntegerExponentPolicy {
  Perturb,       ///< shift c by a real offset and report the run as advisory
  DirectSeries,  ///< keep c; the engine falls back to the direct series
};

const char* to_string(IntegerExponentPolicy policy) noexcept;

inline constexpr double kIntegerExponentWindow = 1e-6;

struct LimitExperiment {
  SymmetricDiffParams params;
  /// Strictly decreasing, positive, first entry below 1/2.
  std::vector<Real> eps_schedule;
  PrecisionContext ctx;
  std::size_t window = 6;
  ExtrapolationBasis basis = ExtrapolationBasis::Polynomial;
  IntegerExponentPolicy integer_policy = IntegerExponentPolicy::Perturb;
  double c_offset = 1e-3;

  /// 2^-4, 2^-5, ..., 2^-22.
  static std::vector<Real> default_schedule(Bits bits);
  /// eps_max, eps_max/2, ... down to the last value >= eps_min.
  static std::vector<Real> halving_schedule(const Real& eps_max, const Real& eps_min);

  Complex exponent() const { return params.exponent(); }
  /// Throws DomainError when Re(s) <= 0 and InvalidParameterError on a bad
  /// schedule or window.
  void validate() const;
};

struct LimitRow {
  Real eps;
  Complex value;      ///< L(ε)
  Real est_error;     ///< estimated absolute error of L(ε)
  Complex running;    ///< extrapolant from this row and up to window-1 before it
};

struct LimitReport {
  std::vector<LimitRow> rows;
  Complex extrapolated;
  Complex rhs;
  Real abs_err;
  Real rel_err;
  Real target;
  bool converged = false;
  /// Fitted leading exponent of L(ε) - limit over the last three rows.
  std::optional<double> observed_order;
  /// |last running extrapolant - previous one|, a spread diagnostic.
  Real spread;
  /// c was shifted because s was within kIntegerExponentWindow of an integer.
  bool perturbed = false;
  Complex c_used;
};

/// Γ(c) Γ(s) / (Γ(a) Γ(b)) · (a - b)(α - β). Throws DomainError if Re(s) <= 0.
Complex theorem_rhs(const SymmetricDiffParams& p, const PrecisionContext& ctx);

/// L(ε) = ε^s D(1 - ε).
Complex scaled_difference(const SymmetricDiffParams& p, const Real& eps, const PrecisionContext& ctx);

/// The parameters the scan actually evaluates, after the integer-exponent policy.
SymmetricDiffParams effective_params(const LimitExperiment& e, bool* perturbed = nullptr);

/// Evaluates L over the schedule, extrapolates to ε = 0 on the last `window`
/// points, and compares with theorem_rhs: relative when rhs != 0, absolute
/// 10^-(digits/2) when rhs = 0.
LimitReport run_limit_scan(const LimitExperiment& e, const Real& target_rel_err);

/// (a + p - 1) Γ(c) Γ(s) / (Γ(a) Γ(b)), p the leading shift of the branch.
/// Throws InvalidParameterError when a + p - 1 = 0.
Complex per_term_limit(const SymmetricDiffParams& p, Branch which, const PrecisionContext& ctx);

/// ε^s · term_i(1 - ε) for the given branch of the telescoped expansion.
Complex scaled_term(const SymmetricDiffParams& p, int i, Branch which, const Real& eps, const PrecisionContext& ctx);

/// run_limit_scan for a single telescoping term against per_term_limit.
/// Requires 0 <= i <= k - 1.
LimitReport per_term_limit_check(const LimitExperiment& e, int i, Branch which, const Real& target_rel_err);

}  // namespace contighyp
