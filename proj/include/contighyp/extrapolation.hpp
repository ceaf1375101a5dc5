#pragma once

#include <optional>
#include <span>
#include <vector>

#include "contighyp/complex.hpp"

namespace contighyp {

enum class ExtrapolationBasis {
  Polynomial,         ///< 1, ε, ε², ...
  PolynomialWithLog,  ///< 1, ε, ε ln ε, ε², ...
};

const char* to_string(ExtrapolationBasis basis) noexcept;

/// Interpolates values[i] at eps[i] in the chosen basis (one function per
/// point) and returns the constant coefficient, i.e. the value at ε = 0.
/// Works in the scaled variable ε / max(eps). Throws InvalidParameterError
/// on empty, mismatched, non-positive or repeated abscissae.
Complex extrapolate_to_zero(std::span<const Real> eps, std::span<const Complex> values, ExtrapolationBasis basis);

/// Solves A x = b by Gaussian elimination with partial pivoting, for a real
/// square A and complex right-hand side. Throws InvalidParameterError if A
/// is singular at its working precision.
std::vector<Complex> solve_linear(std::vector<std::vector<Real>> a, std::vector<Complex> b);

/// Empirical order p of |L(ε_{j}) - L(ε_{j+1})| ~ ε^p from the last three
/// points of a geometric schedule. Empty when the differences vanish.
std::optional<double> observed_order(std::span<const Real> eps, std::span<const Complex> values);

}  // namespace contighyp
