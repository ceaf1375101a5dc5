#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>

#include "contighyp/complex.hpp"
#include "contighyp/precision.hpp"

namespace contighyp {

/// Principal-branch log Gamma(z), analytic off the cut (-inf, 0].
///
/// Stirling series after upward recurrence into Re w >= R, with R tied to
/// the working precision. The recurrence logs are accumulated as one product
/// whose branch is fixed from the double-precision sum of arguments, so the
/// result satisfies log_gamma(z + 1) = log_gamma(z) + log(z) exactly as
/// branches go. Throws PoleError within tol_rel of 0, -1, -2, ...
Complex log_gamma(const Complex& z, const PrecisionContext& ctx);

/// Rising factorial a (a+1) ... (a+n-1); 1 for n = 0.
Complex pochhammer(const Complex& a, std::uint64_t n, const PrecisionContext& ctx);

/// prod Gamma(num) / prod Gamma(den), evaluated in log space.
Complex gamma_ratio(std::span<const Complex> num, std::span<const Complex> den, const PrecisionContext& ctx);
Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den,
                    const PrecisionContext& ctx);

struct GammaRatio {
  Complex value;
  /// Estimated relative error of `value`.
  Real rel_error;
};

/// gamma_ratio plus an error estimate. A denominator argument at a pole
/// yields an exact zero instead of throwing (1/Gamma is entire).
GammaRatio gamma_ratio_estimate(std::span<const Complex> num, std::span<const Complex> den,
                                const PrecisionContext& ctx);

/// Returns n when z is within `tol` of the non-positive integer n.
std::optional<long> nonpositive_integer_near(const Complex& z, const Real& tol);

/// Returns n when z is within `tol` of the integer n.
std::optional<long> integer_near(const Complex& z, const Real& tol);

}  // namespace contighyp
