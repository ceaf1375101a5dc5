#include "contighyp/gamma.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "contighyp/errors.hpp"

namespace contighyp {

namespace {

class Mpz {
 public:
  Mpz() { mpz_init(value_); }
  Mpz(const Mpz& other) { mpz_init_set(value_, other.value_); }
  Mpz& operator=(const Mpz& other) {
    mpz_set(value_, other.value_);
    return *this;
  }
  ~Mpz() { mpz_clear(value_); }

  mpz_ptr get() { return value_; }
  mpz_srcptr get() const { return value_; }

 private:
  mpz_t value_;
};

/// Exact B_2, B_4, ..., B_{2n} from tangent numbers (Brent & Harvey).
class BernoulliTable {
 public:
  explicit BernoulliTable(int count) : num_(static_cast<std::size_t>(count)), den_(static_cast<std::size_t>(count)) {
    std::vector<Mpz> tangent(static_cast<std::size_t>(count) + 1);
    mpz_set_ui(tangent[1].get(), 1);
    for (int k = 2; k <= count; ++k) mpz_mul_ui(tangent[k].get(), tangent[k - 1].get(), static_cast<unsigned long>(k - 1));
    Mpz scratch;
    for (int k = 2; k <= count; ++k) {
      for (int j = k; j <= count; ++j) {
        mpz_mul_ui(scratch.get(), tangent[j - 1].get(), static_cast<unsigned long>(j - k));
        mpz_mul_ui(tangent[j].get(), tangent[j].get(), static_cast<unsigned long>(j - k + 2));
        mpz_add(tangent[j].get(), tangent[j].get(), scratch.get());
      }
    }
    // B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))
    for (int k = 1; k <= count; ++k) {
      Mpz& num = num_[static_cast<std::size_t>(k - 1)];
      Mpz& den = den_[static_cast<std::size_t>(k - 1)];
      mpz_mul_ui(num.get(), tangent[k].get(), static_cast<unsigned long>(2 * k));
      if (k % 2 == 0) mpz_neg(num.get(), num.get());
      mpz_ui_pow_ui(den.get(), 4, static_cast<unsigned long>(k));
      mpz_sub_ui(scratch.get(), den.get(), 1);
      mpz_mul(den.get(), den.get(), scratch.get());
    }
  }

  int size() const { return static_cast<int>(num_.size()); }

  /// B_{2k} / (2k (2k - 1)), the k-th Stirling coefficient.
  Real stirling_coeff(int k, Bits bits) const {
    Real out(bits);
    mpfr_set_z(out.get(), num_[static_cast<std::size_t>(k - 1)].get(), MPFR_RNDN);
    mpfr_div_z(out.get(), out.get(), den_[static_cast<std::size_t>(k - 1)].get(), MPFR_RNDN);
    return out / static_cast<long>(2 * k * (2 * k - 1));
  }

 private:
  std::vector<Mpz> num_;
  std::vector<Mpz> den_;
};

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table(320);
  return table;
}

/// Stirling series for log Gamma(w), Re w large. Empty when the table is too
/// short for the requested accuracy at this |w|.
std::optional<Complex> stirling(const Complex& w, Bits bits) {
  const BernoulliTable& table = bernoulli_table();
  const Real half(0.5, bits);
  const Complex log_w = log(w);
  const Real half_log_2pi = log(Real::pi(bits) * 2L) / 2L;
  Complex sum = (w - half) * log_w - w + half_log_2pi;

  const Complex inv_w = Complex(Real(1L, bits)) / w;
  const Complex inv_w2 = inv_w * inv_w;
  Complex power = inv_w;
  const Real eps = Real::pow2(-bits - 2, PrecisionContext::kMagnitudeBits);
  Real previous(PrecisionContext::kMagnitudeBits);
  for (int k = 1; k <= table.size(); ++k) {
    const Complex term = power * table.stirling_coeff(k, bits);
    sum += term;
    const Real size = abs1(term).with_precision(PrecisionContext::kMagnitudeBits);
    if (size <= eps * abs1(sum)) return sum;
    // Past the smallest term the asymptotic series only diverges.
    if (k > 2 && size > previous) return std::nullopt;
    previous = size;
    power *= inv_w2;
  }
  return std::nullopt;
}

}  // namespace

std::optional<long> integer_near(const Complex& z, const Real& tol) {
  if (abs(z.im) > tol) return std::nullopt;
  const Real nearest = round(z.re);
  if (abs(z.re - nearest) > tol) return std::nullopt;
  if (abs(nearest) > Real(1e15, nearest.precision())) return std::nullopt;
  return nearest.to_long();
}

std::optional<long> nonpositive_integer_near(const Complex& z, const Real& tol) {
  const auto n = integer_near(z, tol);
  if (n && *n <= 0) return n;
  return std::nullopt;
}

Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
  if (!z.is_finite()) throw NonFiniteError("log_gamma argument is not finite");
  if (const auto pole = nonpositive_integer_near(z, ctx.tol_rel())) {
    throw PoleError("Gamma has a pole at " + std::to_string(*pole) + " (argument " + z.to_string(20) + ")");
  }

  const Bits out_bits = std::max(ctx.bits(), z.precision());
  if (z.is_real() && (z.re == 1L || z.re == 2L)) return Complex(out_bits);
  const Bits bits = out_bits + 32;
  const Complex x = z.with_precision(bits);

  double radius = 0.25 * static_cast<double>(bits) + 10.0;
  for (int attempt = 0; attempt < 8; ++attempt, radius *= 2.0) {
    const double re = x.re.to_double();
    const long shift = re >= radius ? 0 : static_cast<long>(std::ceil(radius - re));
    const auto series = stirling(x + shift, bits);
    if (!series) continue;
    if (shift == 0) return series->with_precision(out_bits);

    // sum_{j<shift} log(x + j) = log(prod) + 2 pi i m
    Complex product(Real(1L, bits));
    double arg_sum = 0.0;
    for (long j = 0; j < shift; ++j) {
      const Complex factor = x + j;
      product *= factor;
      arg_sum += std::atan2(factor.im.to_double(), factor.re.to_double());
    }
    Complex log_product = log(product);
    const double wraps = std::round((arg_sum - log_product.im.to_double()) / (2.0 * std::numbers::pi));
    if (wraps != 0.0) log_product.im += Real::pi(bits) * (2L * static_cast<long>(wraps));
    return (*series - log_product).with_precision(out_bits);
  }
  throw PrecisionExhaustedError("Stirling series did not reach working precision");
}

Complex pochhammer(const Complex& a, std::uint64_t n, const PrecisionContext& ctx) {
  const Bits bits = std::max(ctx.bits(), a.precision());
  Complex out(Real(1L, bits));
  const Complex base = a.with_precision(bits);
  for (std::uint64_t j = 0; j < n; ++j) out *= base + static_cast<long>(j);
  return out;
}

GammaRatio gamma_ratio_estimate(std::span<const Complex> num, std::span<const Complex> den,
                                const PrecisionContext& ctx) {
  Bits bits = ctx.bits();
  for (const Complex& z : num) bits = std::max(bits, z.precision());
  for (const Complex& z : den) bits = std::max(bits, z.precision());

  const Real tol = ctx.tol_rel();
  for (const Complex& z : den) {
    if (nonpositive_integer_near(z, tol)) return {Complex(bits), Real(PrecisionContext::kMagnitudeBits)};
  }

  Complex exponent(bits);
  Real magnitude(PrecisionContext::kMagnitudeBits);
  for (const Complex& z : num) {
    const Complex lg = log_gamma(z, ctx);
    magnitude += abs1(lg);
    exponent += lg;
  }
  for (const Complex& z : den) {
    const Complex lg = log_gamma(z, ctx);
    magnitude += abs1(lg);
    exponent -= lg;
  }
  Complex value = exp(exponent);
  // Real arguments: the imaginary exponent is a multiple of pi, so the
  // ratio is real and only its sign survives.
  const auto is_real = [](const Complex& z) { return z.is_real(); };
  if (std::all_of(num.begin(), num.end(), is_real) && std::all_of(den.begin(), den.end(), is_real)) {
    value.im = Real(bits);
  }
  if (!value.is_finite()) {
    throw OverflowError("Gamma ratio magnitude exp(" + exponent.re.to_string(10) + ") is not representable");
  }
  const Real roundoff = Real::pow2(1 - bits, PrecisionContext::kMagnitudeBits);
  Real rel_error = roundoff * (magnitude * 2L + abs1(exponent) + static_cast<long>(4 + num.size() + den.size()));
  return {std::move(value), std::move(rel_error)};
}

Complex gamma_ratio(std::span<const Complex> num, std::span<const Complex> den, const PrecisionContext& ctx) {
  const Real tol = ctx.tol_rel();
  for (const Complex& z : den) {
    if (const auto pole = nonpositive_integer_near(z, tol)) {
      throw PoleError("denominator Gamma argument at pole " + std::to_string(*pole));
    }
  }
  return gamma_ratio_estimate(num, den, ctx).value;
}

Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den,
                    const PrecisionContext& ctx) {
  return gamma_ratio(std::span<const Complex>(num.begin(), num.size()),
                     std::span<const Complex>(den.begin(), den.size()), ctx);
}

}  // namespace contighyp
