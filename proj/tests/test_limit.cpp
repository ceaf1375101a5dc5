#include <cmath>

#include "contighyp/errors.hpp"
#include "contighyp/extrapolation.hpp"
#include "contighyp/gamma.hpp"
#include "contighyp/limit.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace contighyp;
using namespace contighyp::testing;

namespace {

const PrecisionContext kCtx(60);
const Bits kBits = kCtx.bits();
const Real kTarget(1e-6, 64);

Complex num(const char* text) { return Complex::parse(text, kBits); }

SymmetricDiffParams diff(const char* a, const char* b, const char* c, int alpha, int beta) {
  return SymmetricDiffParams::make(num(a), num(b), num(c), alpha, beta, kCtx);
}

LimitExperiment experiment(const SymmetricDiffParams& d) {
  return {d, LimitExperiment::default_schedule(kBits), kCtx};
}

// 1.875 pi from Gamma(1.5) Gamma(3.5) * 4 / (Gamma(3) Gamma(1)).
Complex rhs_31152() {
  return Complex(half_integer_gamma(3, kBits) * half_integer_gamma(7, kBits) * 4L / half_integer_gamma(6, kBits));
}

// Gamma(1.3) Gamma(1.7) = 0.21 pi / sin(0.3 pi) by the reflection formula.
Real gamma_13_17() {
  const Real pi = Real::pi(kBits);
  return Real::parse("0.21", kBits) * pi / sin(Real::parse("0.3", kBits) * pi);
}

}  // namespace

TEST_CASE("extrapolation recovers exact models") {
  std::vector<Real> eps;
  std::vector<Complex> poly;
  std::vector<Complex> with_log;
  const Complex c0(Real::parse("1.25", kBits), Real::parse("-0.5", kBits));
  for (long k = 10; k < 16; ++k) {
    const Real e = Real::pow2(-k, kBits);
    eps.push_back(e);
    poly.push_back(c0 + Complex(e * 3L - e * e * 7L + e * e * e * e * e));
    with_log.push_back(c0 + Complex(e * 2L + e * log(e) * 5L - e * e));
  }
  CHECK(rel_err(extrapolate_to_zero(eps, poly, ExtrapolationBasis::Polynomial), c0) < Real(1e-60, kBits));
  CHECK(rel_err(extrapolate_to_zero(eps, with_log, ExtrapolationBasis::PolynomialWithLog), c0) < Real(1e-60, kBits));
  CHECK(rel_err(extrapolate_to_zero(eps, with_log, ExtrapolationBasis::Polynomial), c0) > Real(1e-8, kBits));

  const auto order = observed_order(eps, poly);
  REQUIRE(order);
  CHECK(std::fabs(*order - 1.0) < 1e-3);

  CHECK_THROWS_AS(extrapolate_to_zero({}, {}, ExtrapolationBasis::Polynomial), InvalidParameterError);
  const std::vector<Real> repeated{eps[0], eps[0]};
  CHECK_THROWS_AS(extrapolate_to_zero(repeated, std::span(poly).first(2), ExtrapolationBasis::Polynomial),
                  InvalidParameterError);
}

TEST_CASE("linear solve with pivoting") {
  // First pivot is zero without row exchange.
  std::vector<std::vector<Real>> a{{Real(0L, kBits), Real(2L, kBits)}, {Real(3L, kBits), Real(1L, kBits)}};
  const std::vector<Complex> x = solve_linear(a, {Complex(4L, kBits), Complex(Real(5L, kBits), Real(3L, kBits))});
  CHECK(rel_err(x[1], Complex(2L, kBits)) < kCtx.tol_rel());
  CHECK(rel_err(x[0], Complex(Real(1L, kBits), Real(1L, kBits))) < kCtx.tol_rel());
}

TEST_CASE("theorem right-hand side") {
  CHECK(rel_err(theorem_rhs(diff("3", "1", "1.5", 2, 0), kCtx), rhs_31152()) <= kCtx.tol_rel());
  CHECK(theorem_rhs(diff("3", "1", "1.5", 2, 0), kCtx).re.to_string(11) == "5.8904862255e+00");
  CHECK(theorem_rhs(diff("3", "1", "1.5", 2, 2), kCtx).is_zero());
  CHECK(theorem_rhs(diff("1.5", "1.5", "1.5", 3, 0), kCtx).is_zero());
  CHECK(rel_err(theorem_rhs(diff("2", "1", "1.3", 1, 0), kCtx), Complex(gamma_13_17())) <= kCtx.tol_rel());

  // mpmath Gamma(c) Gamma(s) at 80 digits, c = 1.25+0.5i, s = 1.75-0.5i
  const Complex frozen(
      Real::parse("0.64125037563326526582517128295968089125016722200372967933137530474883461848866651", kBits),
      Real::parse("-0.14546117548584385281618855530494611506483911572150894730622733941597522307425213", kBits));
  CHECK(rel_err(theorem_rhs(diff("2", "1", "1.25+0.5i", 1, 0), kCtx), frozen) <= kCtx.tol_rel());

  // c = a + b + alpha + beta - 1 puts s on the boundary.
  CHECK_THROWS_AS(theorem_rhs(diff("3", "1", "5", 2, 0), kCtx), DomainError);
  CHECK_THROWS_AS(theorem_rhs(diff("3", "1", "7", 2, 2), kCtx), DomainError);
}

TEST_CASE("scaled difference") {
  const SymmetricDiffParams d = diff("3", "1", "1.5", 2, 0);
  const Complex value = scaled_difference(d, Real::pow2(-10, kBits), kCtx);
  // mpmath at 80 digits
  const Complex frozen(
      Real::parse("5.892213499974483517360522406469982737477005660009854871564768726704301769982193", kBits));
  CHECK(rel_err(value, frozen) <= kCtx.tol_rel());
  CHECK(rel_err(value, rhs_31152()) < Real(0.01, kBits));

  // First-order approach: the gap halves with eps.
  const Complex rhs = rhs_31152();
  const Real g1 = abs(scaled_difference(d, Real::pow2(-12, kBits), kCtx) - rhs);
  const Real g2 = abs(scaled_difference(d, Real::pow2(-13, kBits), kCtx) - rhs);
  const Real g3 = abs(scaled_difference(d, Real::pow2(-14, kBits), kCtx) - rhs);
  CHECK(std::fabs((g2 / g1).to_double() - 0.5) < 0.01);
  CHECK(std::fabs((g3 / g2).to_double() - 0.5) < 0.01);

  CHECK(scaled_difference(diff("3", "1", "1.5", 1, 1), Real::pow2(-8, kBits), kCtx).is_zero());
}

TEST_CASE("limit scan reproduces the theorem") {
  SUBCASE("(3, 1, 1.5, 2, 0) -> 1.875 pi") {
    const LimitReport r = run_limit_scan(experiment(diff("3", "1", "1.5", 2, 0)), kTarget);
    CHECK(r.converged);
    CHECK(rel_err(r.extrapolated, rhs_31152()) <= kTarget);
    CHECK(r.rows.size() == 19);
    CHECK(r.rows.front().eps == Real::pow2(-4, kBits));
    CHECK(r.rows.back().eps == Real::pow2(-22, kBits));
    CHECK(!r.perturbed);
    REQUIRE(r.observed_order);
    CHECK(*r.observed_order > 0.99);
  }
  SUBCASE("complex c") {
    const LimitReport r = run_limit_scan(experiment(diff("2", "1", "1.25+0.5i", 1, 0)), kTarget);
    CHECK(r.converged);
    CHECK(r.rel_err <= kTarget);
  }
  SUBCASE("complex a, b, c") {
    const LimitReport r = run_limit_scan(experiment(diff("2.5+0.5i", "0.5+0.5i", "1.1-0.3i", 3, 1)), kTarget);
    CHECK(r.converged);
    const Complex frozen(
        Real::parse("-8.4840480499087968906589533526378635738437072291871889365354585881164403081415679", kBits),
        Real::parse("6.87693123515395010750170324314005802833146824728720339041373307948209521444818", kBits));
    CHECK(rel_err(r.extrapolated, frozen * 4L) <= kTarget);
  }
  SUBCASE("shrinking the schedule by a fixed factor leaves the limit unchanged") {
    LimitExperiment e = experiment(diff("3.2", "1.2", "0.7", 1, 2));
    const LimitReport base = run_limit_scan(e, kTarget);
    for (Real& x : e.eps_schedule) x = x * Real::parse("0.75", kBits);
    const LimitReport scaled = run_limit_scan(e, kTarget);
    CHECK(base.converged);
    CHECK(scaled.converged);
    CHECK(rel_err(scaled.extrapolated, base.extrapolated) <= kTarget);
  }
  SUBCASE("integer exponent is perturbed and flagged") {
    const LimitReport r = run_limit_scan(experiment(diff("2", "1", "1", 1, 0)), kTarget);
    CHECK(r.perturbed);
    CHECK(r.c_used.re.to_double() == doctest::Approx(1.001));
    CHECK(r.converged);
    CHECK(std::fabs(r.extrapolated.re.to_double() - 1.0) < 2e-3);
  }
  SUBCASE("small Re(s) leaves an eps^s correction the polynomial fit does not absorb") {
    const LimitReport r = run_limit_scan(experiment(diff("1.5", "0.5", "1.2", 1, 0)), kTarget);
    REQUIRE(r.observed_order);
    CHECK(*r.observed_order == doctest::Approx(0.8).epsilon(0.02));
    CHECK(r.rel_err < Real(1e-4, 64));
  }
}

TEST_CASE("degenerate parameters scan to zero") {
  for (const SymmetricDiffParams& d : {diff("3", "1", "1.5", 2, 2), diff("1.7+0.2i", "1.7+0.2i", "1.5", 3, 0)}) {
    const LimitReport r = run_limit_scan(experiment(d), kTarget);
    CHECK(r.converged);
    CHECK(r.rhs.is_zero());
    CHECK(r.extrapolated.is_zero());
    for (const LimitRow& row : r.rows) CHECK(abs(row.value) < Real(1e-30, 64));
  }
}

TEST_CASE("experiment validation") {
  LimitExperiment e = experiment(diff("3", "1", "1.5", 2, 0));
  e.eps_schedule = {Real(0.5, kBits), Real(0.25, kBits)};
  CHECK_THROWS_AS(e.validate(), InvalidParameterError);
  e.eps_schedule = {Real(0.25, kBits), Real(0.25, kBits)};
  CHECK_THROWS_AS(e.validate(), InvalidParameterError);
  e.eps_schedule = {};
  CHECK_THROWS_AS(e.validate(), InvalidParameterError);
  CHECK_THROWS_AS(run_limit_scan(experiment(diff("3", "1", "5.5", 2, 0)), kTarget), DomainError);

  const std::vector<Real> halving = LimitExperiment::halving_schedule(Real(0.25, kBits), Real(1e-3, kBits));
  CHECK(halving.size() == 8);
  CHECK_THROWS_AS(LimitExperiment::halving_schedule(Real(0.25, kBits), Real(0.5, kBits)), InvalidParameterError);
}

TEST_CASE("per-term asymptotics") {
  SUBCASE("(2, 1, 1.3), alpha = 1, i = 0") {
    const SymmetricDiffParams d = diff("2", "1", "1.3", 1, 0);
    const Complex want(gamma_13_17() * 2L);
    CHECK(rel_err(per_term_limit(d, Branch::First, kCtx), want) <= kCtx.tol_rel());
    const LimitReport r = per_term_limit_check(experiment(d), 0, Branch::First, Real(1e-5, 64));
    CHECK(r.converged);
    CHECK(rel_err(r.extrapolated, want) <= Real(1e-5, 64));
    CHECK_THROWS_AS(per_term_limit_check(experiment(d), 1, Branch::First, Real(1e-5, 64)), InvalidParameterError);
  }
  SUBCASE("k = 2: independent of i, branches differ by (alpha - beta) K") {
    for (const SymmetricDiffParams& d : {diff("3", "1", "1.5", 2, 0), diff("2.5+0.5i", "0.5+0.5i", "1.1-0.3i", 3, 1)}) {
      const LimitExperiment e = experiment(d);
      const Complex k = gamma_ratio({d.c, d.exponent()}, {d.a, d.b}, kCtx);
      Complex sum(kBits);
      for (const Branch branch : {Branch::First, Branch::Second}) {
        const LimitReport r0 = per_term_limit_check(e, 0, branch, Real(1e-5, 64));
        const LimitReport r1 = per_term_limit_check(e, 1, branch, Real(1e-5, 64));
        CHECK(r0.converged);
        CHECK(r1.converged);
        CHECK(rel_err(r0.extrapolated, r1.extrapolated) <= Real(1e-5, 64));
        sum += (branch == Branch::First ? r0.extrapolated + r1.extrapolated : -(r0.extrapolated + r1.extrapolated));
      }
      const Complex spacing = per_term_limit(d, Branch::First, kCtx) - per_term_limit(d, Branch::Second, kCtx);
      CHECK(rel_err(spacing, k * static_cast<long>(d.alpha - d.beta)) <= kCtx.tol_rel() * 10L);
      // k terms per branch, (alpha - beta) apart: the theorem's constant.
      CHECK(rel_err(sum, theorem_rhs(d, kCtx)) <= Real(1e-5, 64));
    }
  }
  SUBCASE("a + shift - 1 = 0 is rejected") {
    CHECK_THROWS_AS(per_term_limit(diff("1", "0.5", "0.2", 0, 1), Branch::First, kCtx), InvalidParameterError);
  }
}
