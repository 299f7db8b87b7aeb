#pragma once

// Moments of the Riesz product measure and its Caratheodory series.
//
//   MU: prod_{k>=1} (1 + cos(4^k t)),  the measure driving the walk
//   NU: prod_{k>=0} (1 + cos(4^k t)),  Riesz's original measure
//
// with dMU(z) = dNU(z^4). A nonzero integer j has a nonzero moment exactly
// when j = +-4^{k_1} +- ... +- 4^{k_p} with distinct exponents, and then
// the moment is 2^{-p}.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszwalk/rational.hpp"
#include "rieszwalk/series.hpp"

namespace rieszwalk {

enum class MeasureVariant { MU, NU };

inline const char* to_string(MeasureVariant v) { return v == MeasureVariant::MU ? "mu" : "nu"; }

struct QuarticDigit {
  int exponent;  // k in 4^k
  int sign;      // +1 or -1
  friend bool operator==(const QuarticDigit&, const QuarticDigit&) = default;
};

/// Signed digits of j in base 4, exponents strictly decreasing.
struct SignedQuarticExpansion {
  std::vector<QuarticDigit> digits;

  std::size_t size() const { return digits.size(); }

  /// Sum of sign * 4^exponent.
  std::int64_t value() const {
    std::int64_t total = 0;
    for (const auto& d : digits) total += d.sign * (std::int64_t{1} << (2 * d.exponent));
    return total;
  }
};

/// Digit extraction with residues {0, 1, 3} mod 4; a residue of 2 means j
/// has no such representation. For MU the level-0 digit must vanish.
/// Returns std::nullopt when j is not representable.
inline std::optional<SignedQuarticExpansion> signed_quartic_digits(std::int64_t j,
                                                                   MeasureVariant variant) {
  if (j == 0) throw std::invalid_argument("signed_quartic_digits: j must be nonzero");
  if (j == INT64_MIN) throw std::out_of_range("signed_quartic_digits: |j| overflows");
  const int flip = j < 0 ? -1 : 1;
  std::uint64_t m = static_cast<std::uint64_t>(j < 0 ? -j : j);
  std::vector<QuarticDigit> low_first;
  for (int level = 0; m != 0; ++level) {
    switch (m % 4) {
      case 0: m /= 4; break;
      case 1:
        low_first.push_back({level, flip});
        m = (m - 1) / 4;
        break;
      case 3:
        low_first.push_back({level, -flip});
        m = (m + 1) / 4;
        break;
      default: return std::nullopt;
    }
  }
  if (variant == MeasureVariant::MU && !low_first.empty() && low_first.front().exponent == 0)
    return std::nullopt;
  return SignedQuarticExpansion{{low_first.rbegin(), low_first.rend()}};
}

inline Rational moment(std::int64_t j, MeasureVariant variant) {
  if (j == 0) return Rational(1);
  const auto digits = signed_quartic_digits(j, variant);
  if (!digits) return Rational(0);
  return inverse_power_of_two(static_cast<unsigned>(digits->size()));
}

/// F(z) = 1 + 2 sum_{j>=1} mu_j z^j through z^max_order. All moments are
/// real, so no conjugation is needed.
inline TruncatedSeries caratheodory_series(long max_order, MeasureVariant variant) {
  if (max_order < 0) throw std::invalid_argument("caratheodory_series: max_order < 0");
  std::vector<Rational> c(static_cast<std::size_t>(max_order + 1));
  c[0] = Rational(1);
  const Rational two(2);
  for (long j = 1; j <= max_order; ++j) {
    auto m = moment(j, variant);
    if (!m.is_zero()) c[j] = two * m;
  }
  return TruncatedSeries(std::move(c), max_order);
}

/// mu_0 .. mu_{max_order}.
inline std::vector<Rational> moments(long max_order, MeasureVariant variant) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(max_order + 1));
  for (long j = 0; j <= max_order; ++j) out.push_back(moment(j, variant));
  return out;
}

}  // namespace rieszwalk
