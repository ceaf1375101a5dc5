#include "contighyp/extrapolation.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "contighyp/errors.hpp"

namespace contighyp {

const char* to_string(ExtrapolationBasis basis) noexcept {
  switch (basis) {
    case ExtrapolationBasis::Polynomial: return "polynomial";
    case ExtrapolationBasis::PolynomialWithLog: return "polynomial+log";
  }
  return "?";
}

std::vector<Complex> solve_linear(std::vector<std::vector<Real>> a, std::vector<Complex> b) {
  const std::size_t n = b.size();
  if (a.size() != n) throw InvalidParameterError("linear system shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (abs(a[row][col]) > abs(a[pivot][col])) pivot = row;
    }
    if (a[pivot][col].is_zero()) throw InvalidParameterError("singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const Real factor = a[row][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= b[col] * factor;
    }
  }
  std::vector<Complex> x(n, Complex(b.empty() ? Bits{64} : b[0].precision()));
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= x[j] * a[i][j];
    x[i] = acc / a[i][i];
  }
  return x;
}

Complex extrapolate_to_zero(std::span<const Real> eps, std::span<const Complex> values, ExtrapolationBasis basis) {
  const std::size_t n = eps.size();
  if (n == 0 || values.size() != n) throw InvalidParameterError("extrapolation needs matching, non-empty samples");
  Bits bits = 64;
  for (std::size_t i = 0; i < n; ++i) {
    if (eps[i].sign() <= 0) throw InvalidParameterError("extrapolation abscissae must be positive");
    bits = std::max({bits, eps[i].precision(), values[i].precision()});
  }
  Real top = eps[0].with_precision(bits);
  for (const Real& e : eps) top = max(top, e.with_precision(bits));

  const bool with_log = basis == ExtrapolationBasis::PolynomialWithLog && n >= 3;
  std::vector<std::vector<Real>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Real t = eps[i].with_precision(bits) / top;
    Real power(1L, bits);
    a[i].reserve(n);
    for (std::size_t j = 0; a[i].size() < n; ++j) {
      a[i].push_back(power);
      if (with_log && j == 1) a[i].push_back(t * log(t));
      power *= t;
    }
    a[i].resize(n, Real(bits));
  }
  std::vector<Complex> b(values.begin(), values.end());
  for (Complex& v : b) v = v.with_precision(bits);
  return solve_linear(std::move(a), std::move(b)).front();
}

std::optional<double> observed_order(std::span<const Real> eps, std::span<const Complex> values) {
  const std::size_t n = eps.size();
  if (n < 3 || values.size() != n) return std::nullopt;
  const Real d1 = abs(values[n - 3] - values[n - 2]);
  const Real d2 = abs(values[n - 2] - values[n - 1]);
  if (d1.is_zero() || d2.is_zero()) return std::nullopt;
  const double spacing = (log(eps[n - 3]) - log(eps[n - 2])).to_double();
  if (spacing <= 0.0) return std::nullopt;
  return (log(d1) - log(d2)).to_double() / spacing;
}

}  // namespace contighyp
