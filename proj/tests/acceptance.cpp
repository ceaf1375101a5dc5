// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "contighyp/contiguous.hpp"
#include "contighyp/gamma.hpp"
#include "contighyp/hyp2f1.hpp"
#include "contighyp/limit.hpp"
#include "oracles.hpp"

using namespace contighyp;
using namespace contighyp::testing;

namespace {

const PrecisionContext kCtx(60);
const Bits kBits = kCtx.bits();
const Real kHundredTol = (kCtx.tol_rel() * 100L).with_precision(64);

struct Outcome {
  bool pass = true;
  std::string detail;
};

Complex num(const char* text, Bits bits = kBits) { return Complex::parse(text, bits); }
Real real(const char* text, Bits bits = kBits) { return Real::parse(text, bits); }
Real random_z(std::mt19937_64& rng, double lo, double hi) {
  return Real::parse(std::to_string(uniform(rng, lo, hi)), kBits);
}

bool near_pole(const Complex& z) { return nonpositive_integer_near(z, Real(1e-3, 64)).has_value(); }

std::string sci(const Real& x) { return x.to_string(3); }

Outcome closed_forms() {
  Real worst(64);
  const Complex one(1L, kBits);
  const Complex half(Real(0.5, kBits));
  const Complex three_halves(Real(1.5, kBits));
  const std::vector<std::pair<Complex, Complex>> power_cases{{num("2"), num("0.75")}, {num("2.5+0.3i"), num("-1.2+0.4i")}};
  for (int j = 1; j <= 9; ++j) {
    const Real z = Real(static_cast<long>(j), kBits) / 10L;
    const Real w = 1L - z;

    const Complex f1 = hyp2f1({one, one, Complex(2L, kBits), z}, kCtx).value;
    worst = max(worst, rel_err(f1, Complex(-log(w) / z)));

    for (const auto& [a, b] : power_cases) {
      const Complex f2 = hyp2f1({a, b, b, z}, kCtx).value;
      worst = max(worst, rel_err(f2, pow(w, -a)));
    }

    Real asin_z(kBits);
    mpfr_asin(asin_z.get(), z.get(), MPFR_RNDN);
    const Complex f3 = hyp2f1({half, half, three_halves, z * z}, kCtx).value;
    worst = max(worst, rel_err(f3, Complex(asin_z / z)));
  }
  const Real bound(1e-50, 64);
  return {worst <= bound, "max rel err " + sci(worst) + " <= 1e-50 over z = 0.1..0.9"};
}

Outcome step_identity() {
  std::mt19937_64 rng(20240101);
  Real worst(64);
  int sets = 0;
  while (sets < 200) {
    const ShiftedParams s{random_complex(rng, 5.0, kBits), random_complex(rng, 5.0, kBits),
                          random_complex(rng, 5.0, kBits), 1 + static_cast<int>(rng() % 4),
                          static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
    const Real z = random_z(rng, 0.0, 0.95);
    if (near_pole(s.c + s.gamma) || near_pole(s.c + s.gamma + 1L)) continue;
    const StepCheck c = check_step(s, z, kCtx);
    worst = max(worst, c.residual / abs(c.lhs));
    ++sets;
  }
  return {worst <= kHundredTol, "200 sets, max rel residual " + sci(worst) + " <= " + sci(kHundredTol)};
}

// Parameters with a - b = k: b and c random, a = b + k.
SymmetricDiffParams random_diff(std::mt19937_64& rng, int k) {
  for (;;) {
    const Complex b = random_complex(rng, 5.0, kBits);
    const Complex c = random_complex(rng, 5.0, kBits);
    const Complex a = b + static_cast<long>(k);
    const int alpha = static_cast<int>(rng() % 5);
    const int beta = static_cast<int>(rng() % 5);
    if (near_pole(a) || near_pole(b) || near_pole(c)) continue;
    // Telescoped factors carry c + i; keep those off the poles too.
    bool clash = false;
    for (int i = 0; i <= k; ++i) clash = clash || near_pole(c + static_cast<long>(i));
    if (clash) continue;
    return SymmetricDiffParams::make(a, b, c, alpha, beta, kCtx);
  }
}

Outcome telescoping() {
  std::mt19937_64 rng(20240202);
  Real worst(64);
  int checks = 0;
  for (int k = 1; k <= 4; ++k) {
    for (int n = 0; n < 50; ++n) {
      const SymmetricDiffParams d = random_diff(rng, k);
      for (const Branch branch : {Branch::First, Branch::Second}) {
        const TelescopeExpansion e = telescope(d, branch, kCtx);
        for (const char* zt : {"0.3", "0.6", "0.9"}) {
          const ExpansionValues v = evaluate(e, real(zt), kCtx);
          worst = max(worst, v.residual / abs(v.lhs));
          ++checks;
        }
      }
    }
  }

  // k = 2: weights 1, z/c, z^2/(c(c+1)) times (a)_p (b)_{q+i}.
  bool symbolic = true;
  for (int n = 0; n < 10; ++n) {
    const SymmetricDiffParams d = random_diff(rng, 2);
    for (const Branch branch : {Branch::First, Branch::Second}) {
      const TelescopeExpansion e = telescope(d, branch, kCtx);
      const int p = d.leading_shift(branch);
      const int q = d.trailing_shift(branch);
      const Complex ap = pochhammer(d.a, static_cast<std::uint64_t>(p), kCtx);
      const auto bq = [&](int i) { return pochhammer(d.b, static_cast<std::uint64_t>(q + i), kCtx); };
      const std::vector<Complex> expected{Complex(1L, kBits), Complex(1L, kBits) / d.c,
                                          Complex(1L, kBits) / (d.c * (d.c + 1L))};
      symbolic = symbolic && e.terms.size() == 2 && e.remainder_power == 2;
      for (int i = 0; i < 2 && symbolic; ++i) {
        symbolic = e.terms[static_cast<std::size_t>(i)].index == i &&
                   rel_err(e.terms[static_cast<std::size_t>(i)].coeff / (ap * bq(i)), expected[static_cast<std::size_t>(i)]) <=
                       kCtx.tol_rel();
      }
      symbolic = symbolic && rel_err(e.remainder_coeff / (ap * bq(2)), expected[2]) <= kCtx.tol_rel();
    }
  }
  return {worst <= kHundredTol && symbolic, std::to_string(checks) + " expansions, max rel residual " + sci(worst) +
                                                " <= " + sci(kHundredTol) + "; k=2 weights 1, z/c, z^2/(c(c+1)) " +
                                                (symbolic ? "match" : "MISMATCH")};
}

Outcome remainder_cancellation() {
  std::mt19937_64 rng(20240303);
  Real worst(64);
  Real largest(64);
  int sets = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n < 67; ++n) {
      const SymmetricDiffParams d = random_diff(rng, k);
      const Real z = random_z(rng, 0.0, 0.95);
      const TelescopeExpansion first = telescope(d, Branch::First, kCtx);
      const Real r = remainder_equality_check(d, z, kCtx);
      worst = max(worst, r);
      largest = max(largest, abs(first.remainder_coeff * pow_natural(z, d.k) * eval_shifted(first.remainder, z, kCtx)));
      ++sets;
    }
  }
  return {worst <= kHundredTol, std::to_string(sets) + " sets with a-b in {1,2,3}, max |remainder difference| " +
                                    sci(worst) + " <= " + sci(kHundredTol) + " (largest remainder " + sci(largest) + ")"};
}

struct TheoremCase {
  const char* a;
  const char* b;
  const char* c;
  int alpha;
  int beta;
};

Outcome theorem() {
  const Real target(1e-6, 64);
  std::string detail;
  bool pass = true;

  // Primary set at 60 and 80 digits against 1.875 pi from half-integer Gamma values.
  for (const int digits : {60, 80}) {
    const PrecisionContext ctx(digits);
    const Bits bits = ctx.bits();
    const SymmetricDiffParams d = SymmetricDiffParams::make(num("3", bits), num("1", bits), num("1.5", bits), 2, 0, ctx);
    const LimitReport r = run_limit_scan({d, LimitExperiment::default_schedule(bits), ctx}, target);
    const Complex want(half_integer_gamma(3, bits) * half_integer_gamma(7, bits) * 4L / half_integer_gamma(6, bits));
    const Real err = rel_err(r.extrapolated, want);
    pass = pass && r.converged && err <= target;
    detail += "(3,1,1.5,2,0)@" + std::to_string(digits) + " -> " + r.extrapolated.re.to_string(11) + " rel " + sci(err) + "; ";
  }

  const std::vector<TheoremCase> more{
      {"2", "1", "1.25+0.5i", 1, 0},       {"2", "1", "1.3", 1, 0},
      {"2.5+0.5i", "0.5+0.5i", "1.1-0.3i", 3, 1}, {"3.2", "1.2", "0.7", 1, 2},
      {"4.5", "1.5", "2.2+0.7i", 0, 3},    {"1.75+0.25i", "0.75+0.25i", "0.9", 2, 1},
  };
  Real worst(64);
  for (const TheoremCase& t : more) {
    const SymmetricDiffParams d = SymmetricDiffParams::make(num(t.a), num(t.b), num(t.c), t.alpha, t.beta, kCtx);
    const LimitReport r = run_limit_scan({d, LimitExperiment::default_schedule(kBits), kCtx}, target);
    const Real err = rel_err(r.extrapolated, theorem_rhs(d, kCtx));
    worst = max(worst, err);
    pass = pass && r.converged && err <= target;
  }
  detail += std::to_string(more.size()) + " more sets (3 with complex c) max rel " + sci(worst) + " <= 1e-6";
  return {pass, detail};
}

Outcome per_term() {
  const Real target(1e-5, 64);
  bool pass = true;
  Real worst_limit(64);
  Real worst_spread(64);
  for (const TheoremCase& t : {TheoremCase{"3", "1", "1.5", 2, 0}, TheoremCase{"2.5+0.5i", "0.5+0.5i", "1.1-0.3i", 3, 1}}) {
    const SymmetricDiffParams d = SymmetricDiffParams::make(num(t.a), num(t.b), num(t.c), t.alpha, t.beta, kCtx);
    const LimitExperiment e{d, LimitExperiment::default_schedule(kBits), kCtx};
    for (const Branch branch : {Branch::First, Branch::Second}) {
      const Complex want = per_term_limit(d, branch, kCtx);
      const LimitReport first = per_term_limit_check(e, 0, branch, target);
      const LimitReport last = per_term_limit_check(e, d.k - 1, branch, target);
      const Real e0 = rel_err(first.extrapolated, want);
      const Real e1 = rel_err(last.extrapolated, want);
      const Real spread = rel_err(last.extrapolated, first.extrapolated);
      worst_limit = max(worst_limit, max(e0, e1));
      worst_spread = max(worst_spread, spread);
      pass = pass && first.converged && last.converged && e0 <= target && e1 <= target && spread <= target;
    }
  }
  return {pass, "two k=2 sets, both branches: max rel err vs (a+p-1)G(c)G(s)/(G(a)G(b)) " + sci(worst_limit) +
                    ", i=0 vs i=k-1 " + sci(worst_spread) + " <= 1e-5"};
}

Outcome degenerate() {
  const Real bound(1e-30, 64);
  Real worst(64);
  bool pass = true;
  for (const TheoremCase& t : {TheoremCase{"3", "1", "1.5", 2, 2}, TheoremCase{"2.5+0.5i", "0.5+0.5i", "1.1", 1, 1},
                               TheoremCase{"1.7+0.2i", "1.7+0.2i", "1.5", 3, 0}, TheoremCase{"2.2", "2.2", "0.9+0.4i", 0, 2}}) {
    const SymmetricDiffParams d = SymmetricDiffParams::make(num(t.a), num(t.b), num(t.c), t.alpha, t.beta, kCtx);
    const LimitReport r = run_limit_scan({d, LimitExperiment::default_schedule(kBits), kCtx}, Real(1e-6, 64));
    for (const LimitRow& row : r.rows) worst = max(worst, abs(row.value));
    worst = max(worst, abs(r.extrapolated));
    pass = pass && r.converged;
  }
  pass = pass && worst <= bound;
  return {pass, "alpha=beta and a=b sets: max |L|, |extrapolant| " + sci(worst) + " <= 1e-30"};
}

Outcome cross_method() {
  std::mt19937_64 rng(20240404);
  int sets = 0;
  int failures = 0;
  Real worst_ratio(64);
  while (sets < 100) {
    const Hyp2F1Params p{random_complex(rng, 3.0, kBits), random_complex(rng, 3.0, kBits),
                         random_complex(rng, 3.0, kBits), random_z(rng, 0.5, 0.99)};
    if (near_pole(p.c) || integer_near(p.c - p.a - p.b, Real(1e-3, 64))) continue;
    const EvalResult direct = eval_series(p, kCtx);
    const EvalResult near = eval_near_one(p, kCtx);
    const Real combined = (direct.est_rel_error + near.est_rel_error) * abs(direct.value);
    const Real gap = abs(direct.value - near.value);
    if (gap > combined) ++failures;
    if (!combined.is_zero()) worst_ratio = max(worst_ratio, gap / combined);
    ++sets;
  }
  return {failures == 0, "100 sets, z in (0.5, 0.99): " + std::to_string(failures) +
                             " disagreements; max gap / combined estimate " + worst_ratio.to_string(3)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"closed-form oracles", closed_forms},
      {"step identity", step_identity},
      {"telescoping exactness", telescoping},
      {"remainder cancellation", remainder_cancellation},
      {"theorem reproduction", theorem},
      {"per-term asymptotics", per_term},
      {"degenerate zeroes", degenerate},
      {"cross-method agreement", cross_method},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failed;
}
