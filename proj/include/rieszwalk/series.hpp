#pragma once

// Truncated formal power series over exact rationals.
//
// Each series carries the highest order whose coefficient is trustworthy
// (valid_order). Every operation states how valid_order propagates, and
// coefficients above valid_order are never read.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rieszwalk/rational.hpp"

namespace rieszwalk {

struct ZeroConstantTerm : std::domain_error {
  ZeroConstantTerm() : std::domain_error("series has zero constant term") {}
};

struct NonzeroConstantTerm : std::domain_error {
  NonzeroConstantTerm() : std::domain_error("series has nonzero constant term") {}
};

struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what)
      : std::runtime_error("precision exhausted: " + what) {}
};

class TruncatedSeries {
 public:
  /// Empty series, valid_order = -1 (nothing known).
  TruncatedSeries() = default;

  TruncatedSeries(std::vector<Rational> coefficients, long valid_order)
      : coeffs_(std::move(coefficients)), valid_order_(valid_order) {
    if (valid_order_ < -1)
      throw std::invalid_argument("TruncatedSeries: valid_order < -1");
    coeffs_.resize(static_cast<std::size_t>(valid_order_ + 1));
  }

  /// Series whose coefficients are exactly `coefficients`, trusted through
  /// `valid_order` (missing entries are zero).
  static TruncatedSeries from(std::vector<Rational> coefficients, long valid_order) {
    return TruncatedSeries(std::move(coefficients), valid_order);
  }

  static TruncatedSeries constant(const Rational& c, long valid_order) {
    std::vector<Rational> v(static_cast<std::size_t>(valid_order + 1));
    if (!v.empty()) v[0] = c;
    return TruncatedSeries(std::move(v), valid_order);
  }

  static TruncatedSeries zero(long valid_order) { return constant(Rational(0), valid_order); }

  long valid_order() const { return valid_order_; }

  /// Coefficient of z^k; throws PrecisionExhausted for k > valid_order.
  const Rational& at(long k) const {
    if (k < 0 || k > valid_order_)
      throw PrecisionExhausted("coefficient " + std::to_string(k) +
                               " requested, valid through " +
                               std::to_string(valid_order_));
    return coeffs_[static_cast<std::size_t>(k)];
  }
  const Rational& operator[](long k) const { return at(k); }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.valid_order_ == b.valid_order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<Rational> coeffs_;
  long valid_order_ = -1;
};

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  const long order = std::min(a.valid_order(), b.valid_order());
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  for (long k = 0; k <= order; ++k) out[k] = a[k] + b[k];
  return TruncatedSeries(std::move(out), order);
}

inline TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  const long order = std::min(a.valid_order(), b.valid_order());
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  for (long k = 0; k <= order; ++k) out[k] = a[k] - b[k];
  return TruncatedSeries(std::move(out), order);
}

inline TruncatedSeries series_scale(const TruncatedSeries& a, const Rational& c) {
  std::vector<Rational> out(a.coefficients());
  for (auto& x : out) x *= c;
  return TruncatedSeries(std::move(out), a.valid_order());
}

/// Cauchy product. Both factors have nonnegative valuation, so the result
/// is valid through the smaller of the two orders.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  const long order = std::min(a.valid_order(), b.valid_order());
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  mpq_class acc, term;
  for (long n = 0; n <= order; ++n) {
    acc = 0;
    for (long k = 0; k <= n; ++k) {
      const auto& x = ac[k].raw();
      const auto& y = bc[n - k].raw();
      if (sgn(x) == 0 || sgn(y) == 0) continue;
      mpq_mul(term.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
      acc += term;
    }
    out[n] = Rational(acc);
  }
  return TruncatedSeries(std::move(out), order);
}

/// 1/a through a.valid_order, by the triangular recurrence
/// b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}.
inline TruncatedSeries series_reciprocal(const TruncatedSeries& a) {
  const long order = a.valid_order();
  if (order < 0) return TruncatedSeries();
  if (a[0].is_zero()) throw ZeroConstantTerm();
  const auto& ac = a.coefficients();
  const mpq_class inv0 = 1 / ac[0].raw();
  std::vector<mpq_class> b(static_cast<std::size_t>(order + 1));
  b[0] = inv0;
  mpq_class acc, term;
  for (long n = 1; n <= order; ++n) {
    acc = 0;
    for (long k = 1; k <= n; ++k) {
      const auto& x = ac[k].raw();
      if (sgn(x) == 0 || sgn(b[n - k]) == 0) continue;
      mpq_mul(term.get_mpq_t(), x.get_mpq_t(), b[n - k].get_mpq_t());
      acc += term;
    }
    b[n] = -acc * inv0;
  }
  std::vector<Rational> out;
  out.reserve(b.size());
  for (auto& x : b) out.emplace_back(std::move(x));
  return TruncatedSeries(std::move(out), order);
}

/// a(z)/z for a with a(0) = 0. Loses exactly one order of validity.
inline TruncatedSeries series_shift_down(const TruncatedSeries& a) {
  if (a.valid_order() < 0) throw PrecisionExhausted("shift of an empty series");
  if (!a[0].is_zero()) throw NonzeroConstantTerm();
  std::vector<Rational> out(a.coefficients().begin() + 1, a.coefficients().end());
  return TruncatedSeries(std::move(out), a.valid_order() - 1);
}

/// a(z^4). Coefficients between multiples of four are exact zeros, so the
/// result is valid through 4 * valid_order + 3.
inline TruncatedSeries series_substitute_quartic(const TruncatedSeries& a) {
  const long order = 4 * a.valid_order() + 3;
  std::vector<Rational> out(static_cast<std::size_t>(order + 1));
  for (long k = 0; k <= a.valid_order(); ++k) out[4 * k] = a[k];
  return TruncatedSeries(std::move(out), order);
}

/// z^s * a(z). Valid through a.valid_order + s.
inline TruncatedSeries series_shift_up(const TruncatedSeries& a, long s) {
  std::vector<Rational> out(static_cast<std::size_t>(s));
  out.insert(out.end(), a.coefficients().begin(), a.coefficients().end());
  return TruncatedSeries(std::move(out), a.valid_order() + s);
}

}  // namespace rieszwalk
