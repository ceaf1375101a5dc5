#pragma once

#include <cstdint>

#include "contighyp/real.hpp"

namespace contighyp {

/// Working precision shared by every numeric routine.
///
/// `digits` is the contract: results are correct to about `digits - kGuardDigits`
/// significant decimal digits (`tol_rel`). Arithmetic runs `kExtraDigits`
/// beyond that so that sums of a few rounded terms still meet the contract.
class PrecisionContext {
 public:
  static constexpr int kMinDigits = 30;
  static constexpr int kMaxDigits = 4000;
  static constexpr int kDefaultDigits = 60;
  static constexpr int kGuardDigits = 2;
  static constexpr int kExtraDigits = 20;
  static constexpr std::uint64_t kDefaultTermCap = 10'000'000;

  explicit PrecisionContext(int digits = kDefaultDigits, std::uint64_t term_cap = kDefaultTermCap);

  int digits() const noexcept { return digits_; }
  std::uint64_t term_cap() const noexcept { return term_cap_; }

  /// Binary precision of working values.
  Bits bits() const noexcept { return bits_; }
  /// Precision for values that are only compared against tolerances.
  static constexpr Bits kMagnitudeBits = 64;

  /// Relative error contract, 10^-(digits - kGuardDigits).
  Real tol_rel() const;
  /// Series truncation target, 10^-(digits + kExtraDigits / 2).
  Real series_tol() const;
  /// 2^(1 - bits): unit roundoff of working values.
  Real unit_roundoff() const;

  /// Same term cap, different digit count.
  PrecisionContext with_digits(int digits) const { return PrecisionContext(digits, term_cap_); }
  PrecisionContext with_term_cap(std::uint64_t cap) const { return PrecisionContext(digits_, cap); }

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int digits_;
  std::uint64_t term_cap_;
  Bits bits_;
};

/// Bits needed to carry `digits` significant decimal digits.
Bits bits_for_digits(int digits);

}  // namespace contighyp
