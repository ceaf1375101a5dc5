#include "contighyp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>

#include "CLI11.hpp"
#include "contighyp/contiguous.hpp"
#include "contighyp/gamma.hpp"
#include "contighyp/hyp2f1.hpp"
#include "contighyp/limit.hpp"
#include "contighyp/report.hpp"

namespace contighyp {

namespace {

constexpr const char* kDigitsEnv = "CONTIGHYP_DIGITS";
// 2^-22 and 2^-4, written exactly.
constexpr const char* kDefaultEpsMin = "2.384185791015625e-07";
constexpr const char* kDefaultEpsMax = "0.0625";

struct RunConfig {
  int digits = 60;
  std::uint64_t term_cap = 10'000'000;
  std::string eps_min = kDefaultEpsMin;
  std::string eps_max = kDefaultEpsMax;
  std::string target_rel_err = "1e-6";
  std::string format = "csv";
  std::uint64_t seed = 1;
  std::string out_path;
};

struct Settings {
  PrecisionContext ctx;
  Real eps_min;
  Real eps_max;
  Real target;
  OutputFormat format;
};

Settings resolve(const RunConfig& cfg) {
  const PrecisionContext ctx(cfg.digits, cfg.term_cap);
  Settings s{ctx, Real::parse(cfg.eps_min, ctx.bits()), Real::parse(cfg.eps_max, ctx.bits()),
             Real::parse(cfg.target_rel_err, PrecisionContext::kMagnitudeBits), OutputFormat::Csv};
  if (!(s.eps_min.sign() > 0 && s.eps_min < s.eps_max && s.eps_max < 0.5)) {
    throw InvalidParameterError("need 0 < eps-min < eps-max < 1/2");
  }
  if (s.target.sign() <= 0) throw InvalidParameterError("target-rel-err must be positive");
  const auto format = parse_output_format(cfg.format);
  if (!format) throw InvalidParameterError("unknown format '" + cfg.format + "' (csv, json, pretty)");
  s.format = *format;
  return s;
}

KeyValues config_echo(const RunConfig& cfg, const Settings& s) {
  return {
      {"digits", std::to_string(s.ctx.digits())},
      {"bits", std::to_string(s.ctx.bits())},
      {"term_cap", std::to_string(s.ctx.term_cap())},
      {"eps_min", cfg.eps_min},
      {"eps_max", cfg.eps_max},
      {"target_rel_err", cfg.target_rel_err},
      {"seed", std::to_string(cfg.seed)},
      {"format", to_string(s.format)},
  };
}

struct Outcome {
  Report report;
  int exit = kExitSuccess;
};

struct Params {
  std::string a;
  std::string b;
  std::string c;
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  std::string which = "first";
};

Branch parse_branch(const std::string& text) {
  if (text == "first") return Branch::First;
  if (text == "second") return Branch::Second;
  throw InvalidParameterError("--which must be first or second, got '" + text + "'");
}

Real relative(const Real& residual, const Complex& scale) {
  if (residual.is_zero()) return Real(PrecisionContext::kMagnitudeBits);
  const Real s = abs(scale);
  return (s.is_zero() ? residual : residual / s).with_precision(PrecisionContext::kMagnitudeBits);
}

Real threshold_or_default(const std::string& text, const PrecisionContext& ctx) {
  if (text.empty()) return (ctx.tol_rel() * 100L).with_precision(PrecisionContext::kMagnitudeBits);
  const Real t = Real::parse(text, PrecisionContext::kMagnitudeBits);
  if (t.sign() <= 0) throw InvalidParameterError("--threshold must be positive");
  return t;
}

SymmetricDiffParams symmetric_params(const Params& p, const PrecisionContext& ctx) {
  const Bits bits = ctx.bits();
  return SymmetricDiffParams::make(Complex::parse(p.a, bits), Complex::parse(p.b, bits), Complex::parse(p.c, bits),
                                   p.alpha, p.beta, ctx);
}

KeyValues param_echo(const Params& p, bool with_gamma) {
  KeyValues out{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"alpha", std::to_string(p.alpha)}, {"beta", std::to_string(p.beta)}};
  if (with_gamma) out.emplace_back("gamma", std::to_string(p.gamma));
  return out;
}

// eval ------------------------------------------------------------------

struct EvalArgs {
  Params p;
  std::string z;
  std::string method = "auto";
};

Outcome cmd_eval(const EvalArgs& args, const Settings& s) {
  const Bits bits = s.ctx.bits();
  const Hyp2F1Params p{Complex::parse(args.p.a, bits), Complex::parse(args.p.b, bits), Complex::parse(args.p.c, bits),
                       Real::parse(args.z, bits)};
  EvalResult r;
  if (args.method == "auto") {
    r = hyp2f1(p, s.ctx);
  } else if (args.method == "series") {
    r = eval_series(p, s.ctx);
  } else if (args.method == "near-one") {
    r = eval_near_one(p, s.ctx);
  } else {
    throw InvalidParameterError("--method must be auto, series or near-one");
  }
  Outcome o;
  o.report.command = "eval";
  o.report.config = {{"a", args.p.a}, {"b", args.p.b}, {"c", args.p.c}, {"z", args.z}, {"method_requested", args.method}};
  o.report.columns = {"value_re", "value_im", "method", "terms_used", "est_rel_error"};
  o.report.rows.push_back({format_number(r.value.re), format_number(r.value.im), to_string(r.method),
                           std::to_string(r.terms_used), format_number(r.est_rel_error)});
  return o;
}

// identity-check ---------------------------------------------------------

struct IdentityArgs {
  Params p;
  std::vector<std::string> grid{"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"};
  std::string threshold;
};

Outcome cmd_identity_check(const IdentityArgs& args, const Settings& s, std::ostream& err) {
  const Bits bits = s.ctx.bits();
  const ShiftedParams shifted{Complex::parse(args.p.a, bits), Complex::parse(args.p.b, bits),
                              Complex::parse(args.p.c, bits), args.p.alpha, args.p.beta, args.p.gamma};
  apply_step(shifted, Real(bits), s.ctx);
  const Real threshold = threshold_or_default(args.threshold, s.ctx);

  Outcome o;
  o.report.command = "identity-check";
  o.report.config = param_echo(args.p, true);
  o.report.config.emplace_back("threshold", format_number(threshold));
  o.report.columns = {"z", "lhs_re", "lhs_im", "residual", "rel_residual", "pass"};
  Real worst(PrecisionContext::kMagnitudeBits);
  std::string first_failure = "none";
  int failures = 0;
  for (const std::string& zt : args.grid) {
    const Real z = Real::parse(zt, bits);
    const StepCheck c = check_step(shifted, z, s.ctx);
    const Real rel = relative(c.residual, c.lhs);
    const bool pass = rel <= threshold;
    worst = max(worst, rel);
    if (!pass && failures++ == 0) {
      first_failure = zt;
      err << "identity residual " << rel.to_string(3) << " above threshold at z = " << zt << "\n";
    }
    o.report.rows.push_back({zt, format_number(c.lhs.re), format_number(c.lhs.im), format_number(c.residual),
                             format_number(rel), format_flag(pass)});
  }
  o.report.summary = {{"max_rel_residual", format_number(worst)},
                      {"failures", std::to_string(failures)},
                      {"first_failure", first_failure},
                      {"pass", format_flag(failures == 0)}};
  o.exit = failures == 0 ? kExitSuccess : kExitNumericFailure;
  return o;
}

// telescope --------------------------------------------------------------

struct TelescopeArgs {
  Params p;
  std::string z;
  std::string threshold;
};

Outcome cmd_telescope(const TelescopeArgs& args, const Settings& s, std::ostream& err) {
  const SymmetricDiffParams d = symmetric_params(args.p, s.ctx);
  const Branch branch = parse_branch(args.p.which);
  const Real z = Real::parse(args.z, s.ctx.bits());
  const Real threshold = threshold_or_default(args.threshold, s.ctx);
  const TelescopeExpansion e = telescope(d, branch, s.ctx);
  const ExpansionValues v = evaluate(e, z, s.ctx);

  Outcome o;
  o.report.command = "telescope";
  o.report.config = param_echo(args.p, false);
  o.report.config.emplace_back("which", to_string(branch));
  o.report.config.emplace_back("z", args.z);
  o.report.config.emplace_back("threshold", format_number(threshold));
  o.report.columns = {"kind", "index", "z_power", "alpha", "beta", "gamma", "coeff_re", "coeff_im", "value_re", "value_im"};
  const auto row = [&](const char* kind, int index, int power, const ShiftedParams& sp, const Complex& coeff,
                       const Complex& value) {
    o.report.rows.push_back({kind, std::to_string(index), std::to_string(power), std::to_string(sp.alpha),
                             std::to_string(sp.beta), std::to_string(sp.gamma), format_number(coeff.re),
                             format_number(coeff.im), format_number(value.re), format_number(value.im)});
  };
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    const TelescopeTerm& t = e.terms[i];
    row("term", t.index, t.index, t.shifted, t.coeff, v.terms[i]);
  }
  row("remainder", e.remainder_power, e.remainder_power, e.remainder, e.remainder_coeff, v.remainder);

  const Real rel = relative(v.residual, v.lhs);
  const bool pass = rel <= threshold;
  o.report.summary = {{"k", std::to_string(d.k)},
                      {"lhs_coeff_re", format_number(e.lhs_coeff.re)},
                      {"lhs_coeff_im", format_number(e.lhs_coeff.im)},
                      {"lhs_re", format_number(v.lhs.re)},
                      {"lhs_im", format_number(v.lhs.im)},
                      {"sum_re", format_number(v.total.re)},
                      {"sum_im", format_number(v.total.im)},
                      {"residual", format_number(v.residual)},
                      {"rel_residual", format_number(rel)},
                      {"pass", format_flag(pass)}};
  if (!pass) err << "telescoping residual " << rel.to_string(3) << " above threshold\n";
  o.exit = pass ? kExitSuccess : kExitNumericFailure;
  return o;
}

// limit-scan -------------------------------------------------------------

struct LimitArgs {
  Params p;
  std::size_t window = 6;
  bool log_basis = false;
  std::string integer_policy = "perturb";
  double c_offset = 1e-3;
  int term = -1;
};

Outcome cmd_limit_scan(const LimitArgs& args, const Settings& s, std::ostream& err) {
  LimitExperiment e{symmetric_params(args.p, s.ctx), LimitExperiment::halving_schedule(s.eps_max, s.eps_min), s.ctx};
  e.window = args.window;
  e.basis = args.log_basis ? ExtrapolationBasis::PolynomialWithLog : ExtrapolationBasis::Polynomial;
  if (args.integer_policy == "perturb") {
    e.integer_policy = IntegerExponentPolicy::Perturb;
  } else if (args.integer_policy == "direct") {
    e.integer_policy = IntegerExponentPolicy::DirectSeries;
  } else {
    throw InvalidParameterError("--integer-policy must be perturb or direct");
  }
  e.c_offset = args.c_offset;

  const bool per_term = args.term >= 0;
  const LimitReport r = per_term ? per_term_limit_check(e, args.term, parse_branch(args.p.which), s.target)
                                 : run_limit_scan(e, s.target);
  Outcome o;
  o.report = limit_report_table(r);
  o.report.command = "limit-scan";
  o.report.config = param_echo(args.p, false);
  o.report.config.emplace_back("s", e.exponent().to_string(20));
  o.report.config.emplace_back("window", std::to_string(e.window));
  o.report.config.emplace_back("basis", to_string(e.basis));
  o.report.config.emplace_back("integer_policy", to_string(e.integer_policy));
  if (per_term) {
    o.report.config.emplace_back("term", std::to_string(args.term));
    o.report.config.emplace_back("which", args.p.which);
  }
  if (r.perturbed) err << "advisory: s is an integer; c perturbed to " << r.c_used.to_string(20) << "\n";
  if (!r.converged) {
    err << "not converged: " << (r.rhs.is_zero() ? "abs" : "rel") << " error " << r.rel_err.to_string(3) << "\n";
  }
  o.exit = r.converged ? kExitSuccess : kExitNumericFailure;
  return o;
}

// selftest ---------------------------------------------------------------

struct SelftestArgs {
  int count = 20;
};

double draw(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string literal(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

std::string draw_complex(std::mt19937_64& rng, double radius) {
  if ((rng() & 1u) == 0) return literal(draw(rng, -radius, radius));
  const double bound = radius / std::sqrt(2.0);
  const std::string re = literal(draw(rng, -bound, bound));
  const double im = draw(rng, -bound, bound);
  return re + (im < 0 ? "-" : "+") + literal(std::fabs(im)) + "i";
}

Outcome cmd_selftest(const SelftestArgs& args, const RunConfig& cfg, const Settings& s) {
  const PrecisionContext& ctx = s.ctx;
  const Bits bits = ctx.bits();
  const Real tol = (ctx.tol_rel() * 100L).with_precision(PrecisionContext::kMagnitudeBits);
  Outcome o;
  o.report.command = "selftest";
  o.report.config = {{"count", std::to_string(args.count)}};
  o.report.columns = {"check", "case", "metric", "threshold", "pass"};
  int failures = 0;
  const auto record = [&](const std::string& check, const std::string& name, const Real& metric, const Real& limit) {
    const bool pass = metric <= limit;
    if (!pass) ++failures;
    o.report.rows.push_back({check, name, metric.to_string(6), limit.to_string(3), format_flag(pass)});
  };

  {
    Real worst(PrecisionContext::kMagnitudeBits);
    const Complex one(1L, bits);
    for (int j = 1; j <= 9; ++j) {
      const Real z = Real(static_cast<long>(j), bits) / 10L;
      const Complex f = hyp2f1({one, one, Complex(2L, bits), z}, ctx).value;
      worst = max(worst, abs(f - Complex(-log(1L - z) / z)) / abs(f));
    }
    record("closed-form", "F(1,1;2;z) = -ln(1-z)/z", worst, tol);
  }

  std::mt19937_64 rng(cfg.seed);
  for (int n = 0; n < args.count; ++n) {
    const std::string a = draw_complex(rng, 5.0);
    const std::string b = draw_complex(rng, 5.0);
    const std::string c = draw_complex(rng, 5.0);
    const int alpha = 1 + static_cast<int>(rng() % 4);
    const int beta = static_cast<int>(rng() % 5);
    const int gamma = static_cast<int>(rng() % 5);
    const std::string zt = literal(draw(rng, 0.0, 0.95));
    const ShiftedParams p{Complex::parse(a, bits), Complex::parse(b, bits), Complex::parse(c, bits), alpha, beta, gamma};
    const std::string name = "a=" + a + " b=" + b + " c=" + c + " shifts=" + std::to_string(alpha) + "/" +
                             std::to_string(beta) + "/" + std::to_string(gamma) + " z=" + zt;
    if (nonpositive_integer_near(p.c + gamma, Real(1e-3, 64)) ||
        nonpositive_integer_near(p.c + gamma + 1L, Real(1e-3, 64))) {
      continue;
    }
    const StepCheck check = check_step(p, Real::parse(zt, bits), ctx);
    record("step-identity", name, relative(check.residual, check.lhs), tol);
  }

  for (int k = 1; k <= 4; ++k) {
    const std::string b = literal(draw(rng, 0.2, 3.0));
    const std::string c = literal(draw(rng, 0.2, 3.0));
    const Complex bb = Complex::parse(b, bits);
    const SymmetricDiffParams d =
        SymmetricDiffParams::make(bb + static_cast<long>(k), bb, Complex::parse(c, bits), 2, 1, ctx);
    const ExpansionValues v = evaluate(telescope(d, Branch::First, ctx), Real::parse("0.6", bits), ctx);
    record("telescope", "k=" + std::to_string(k) + " b=" + b + " c=" + c + " z=0.6", relative(v.residual, v.lhs), tol);
  }

  {
    const SymmetricDiffParams d =
        SymmetricDiffParams::make(Complex(3L, bits), Complex(1L, bits), Complex(1.5, bits), 2, 0, ctx);
    const LimitReport r = run_limit_scan({d, LimitExperiment::default_schedule(bits), ctx}, s.target);
    const Complex want(Real::pi(bits) * 15L / 8L);
    record("theorem", "(3,1,1.5,2,0) -> 1.875 pi", abs(r.extrapolated - want) / abs(want), s.target);
  }

  o.report.summary = {{"checks", std::to_string(o.report.rows.size())},
                      {"failures", std::to_string(failures)},
                      {"pass", format_flag(failures == 0)}};
  o.exit = failures == 0 ? kExitSuccess : kExitNumericFailure;
  return o;
}

void add_params(CLI::App* cmd, Params& p) {
  cmd->add_option("a", p.a, "upper parameter a (x, yi, x+yi)")->required();
  cmd->add_option("b", p.b, "upper parameter b")->required();
  cmd->add_option("c", p.c, "lower parameter c")->required();
}

void add_shifts(CLI::App* cmd, Params& p) {
  cmd->add_option("--alpha", p.alpha, "shift alpha")->capture_default_str();
  cmd->add_option("--beta", p.beta, "shift beta")->capture_default_str();
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::Parse:
    case ErrorKind::Domain:
    case ErrorKind::Pole:
    case ErrorKind::ShiftUnderflow:
    case ErrorKind::LogarithmicCase:
    case ErrorKind::NonFinite:
      return kExitInvalidInput;
    case ErrorKind::NonConvergence:
    case ErrorKind::PrecisionExhausted:
      return kExitExhausted;
    case ErrorKind::Overflow:
      return kExitNumericFailure;
  }
  return kExitNumericFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv(kDigitsEnv); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      cfg.digits = std::stoi(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << "error: " << kDigitsEnv << " must be an integer, got '" << env << "'\n";
      return kExitInvalidInput;
    }
  }

  CLI::App app{"Gauss hypergeometric 2F1, contiguous relations and the z -> 1 symmetric-difference limit"};
  app.name("contighyp");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--digits", cfg.digits, "working precision in decimal digits (env CONTIGHYP_DIGITS)")
      ->capture_default_str();
  app.add_option("--term-cap", cfg.term_cap, "maximum series terms")->capture_default_str();
  app.add_option("--eps-min", cfg.eps_min, "smallest epsilon of the limit schedule")->capture_default_str();
  app.add_option("--eps-max", cfg.eps_max, "largest epsilon of the limit schedule")->capture_default_str();
  app.add_option("--target-rel-err", cfg.target_rel_err, "limit-scan acceptance tolerance")->capture_default_str();
  app.add_option("--format", cfg.format, "csv, json or pretty")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--out", cfg.out_path, "write the report to this file");

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "evaluate 2F1(a, b; c; z)");
  add_params(eval, eval_args.p);
  eval->add_option("z", eval_args.z, "argument in [0, 1)")->required();
  eval->add_option("--method", eval_args.method, "auto, series or near-one")->capture_default_str();

  IdentityArgs identity_args;
  CLI::App* identity = app.add_subcommand("identity-check", "check the contiguous step identity on a z grid");
  add_params(identity, identity_args.p);
  add_shifts(identity, identity_args.p);
  identity->add_option("--gamma", identity_args.p.gamma, "shift gamma")->capture_default_str();
  identity->add_option("--z", identity_args.grid, "z grid");
  identity->add_option("--threshold", identity_args.threshold, "relative residual bound (default 100 tol_rel)");

  TelescopeArgs telescope_args;
  CLI::App* tele = app.add_subcommand("telescope", "expand (a)_p (b)_q F_{p,q,0} by the iterated step");
  add_params(tele, telescope_args.p);
  tele->add_option("z", telescope_args.z, "argument in [0, 1)")->required();
  add_shifts(tele, telescope_args.p);
  tele->add_option("--which", telescope_args.p.which, "first or second")->capture_default_str();
  tele->add_option("--threshold", telescope_args.threshold, "relative residual bound (default 100 tol_rel)");

  LimitArgs limit_args;
  CLI::App* limit = app.add_subcommand("limit-scan", "scaled symmetric difference as z -> 1 against the closed form");
  add_params(limit, limit_args.p);
  add_shifts(limit, limit_args.p);
  limit->add_option("--window", limit_args.window, "extrapolation points")->capture_default_str();
  limit->add_flag("--log-basis", limit_args.log_basis, "add an eps ln eps term to the extrapolation basis");
  limit->add_option("--integer-policy", limit_args.integer_policy, "perturb or direct")->capture_default_str();
  limit->add_option("--c-offset", limit_args.c_offset, "c shift used by the perturb policy")->capture_default_str();
  limit->add_option("--term", limit_args.term, "check a single telescoping term's limit instead");
  limit->add_option("--which", limit_args.p.which, "branch for --term: first or second")->capture_default_str();

  SelftestArgs selftest_args;
  CLI::App* selftest = app.add_subcommand("selftest", "quick randomized battery");
  selftest->add_option("--count", selftest_args.count, "random step-identity sets")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInvalidInput;
  }

  try {
    const Settings settings = resolve(cfg);
    Outcome o;
    if (eval->parsed()) {
      o = cmd_eval(eval_args, settings);
    } else if (identity->parsed()) {
      o = cmd_identity_check(identity_args, settings, err);
    } else if (tele->parsed()) {
      o = cmd_telescope(telescope_args, settings, err);
    } else if (limit->parsed()) {
      o = cmd_limit_scan(limit_args, settings, err);
    } else {
      o = cmd_selftest(selftest_args, cfg, settings);
    }
    KeyValues config = config_echo(cfg, settings);
    config.insert(config.end(), o.report.config.begin(), o.report.config.end());
    o.report.config = std::move(config);

    const std::string text = render(o.report, settings.format);
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      file << text;
      if (!file) throw InvalidParameterError("cannot write " + cfg.out_path);
    }
    return o.exit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace contighyp
