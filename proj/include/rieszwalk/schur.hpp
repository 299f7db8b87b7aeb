#pragma once

// Caratheodory -> Schur conversion, the Schur algorithm over exact real
// rationals, and first-return amplitude series.
//
// All data handled here is real rational, so the conjugations in
//   f_{k+1}(z) = (1/z) (f_k(z) - alpha_k) / (1 - conj(alpha_k) f_k(z))
// are the identity.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rieszwalk/rational.hpp"
#include "rieszwalk/riesz_measure.hpp"
#include "rieszwalk/series.hpp"

namespace rieszwalk {

struct ParameterOutOfDisk : std::domain_error {
  ParameterOutOfDisk(std::size_t step, const Rational& alpha)
      : std::domain_error("Verblunsky parameter " + std::to_string(step) + " = " +
                          alpha.to_string() + " is not inside the unit disk") {}
};

struct InsufficientPrecision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// f(z) = z^{-1} (F(z) - 1) / (F(z) + 1). Valid through F.valid_order - 1.
inline TruncatedSeries schur_from_caratheodory(const TruncatedSeries& F) {
  if (F.valid_order() < 0 || F[0] != Rational(1))
    throw std::invalid_argument("schur_from_caratheodory: F(0) must be 1");
  const auto one = TruncatedSeries::constant(Rational(1), F.valid_order());
  return series_shift_down(
      series_mul(series_sub(F, one), series_reciprocal(series_add(F, one))));
}

/// One point of the Schur algorithm: the iterate f_k and alpha_0..alpha_{k-1}.
struct SchurState {
  TruncatedSeries current;
  std::size_t step = 0;
  std::vector<Rational> extracted;

  static SchurState start(TruncatedSeries f) { return SchurState{std::move(f), 0, {}}; }
};

inline void check_in_disk(std::size_t step, const Rational& alpha) {
  if (abs(alpha) >= Rational(1)) throw ParameterOutOfDisk(step, alpha);
}

/// Reads alpha_k = f_k(0) and forms f_{k+1}. The iterate loses one order.
inline SchurState schur_step(const SchurState& state) {
  const auto& f = state.current;
  if (f.valid_order() < 1)
    throw PrecisionExhausted("Schur step " + std::to_string(state.step) +
                             " needs valid_order >= 1, have " +
                             std::to_string(f.valid_order()));
  const Rational alpha = f[0];
  check_in_disk(state.step, alpha);
  const long order = f.valid_order();
  const auto one = TruncatedSeries::constant(Rational(1), order);
  const auto numer = series_sub(f, TruncatedSeries::constant(alpha, order));
  const auto denom = series_sub(one, series_scale(f, alpha));
  SchurState next{series_shift_down(series_mul(numer, series_reciprocal(denom))),
                  state.step + 1, state.extracted};
  next.extracted.push_back(alpha);
  return next;
}

namespace detail {

// The iterate kept as a quotient f_k = p/q with q(0) = 1, which turns each
// Schur step into O(n) work instead of a series inversion. Results agree
// exactly with schur_step.
class SchurQuotient {
 public:
  explicit SchurQuotient(const TruncatedSeries& F) : order_(F.valid_order() - 1) {
    if (F.valid_order() < 0 || F[0] != Rational(1))
      throw std::invalid_argument("extract_verblunsky: F(0) must be 1");
    p_.resize(static_cast<std::size_t>(order_ + 1));
    q_.resize(static_cast<std::size_t>(order_ + 1));
    for (long k = 0; k <= order_; ++k) {
      p_[k] = F[k + 1].raw();
      q_[k] = F[k].raw();
    }
    q_[0] += 1;
    normalize();
  }

  long valid_order() const { return order_; }

  Rational constant_term() const { return Rational(p_[0]); }

  void step(const mpq_class& alpha) {
    mpq_class t;
    // p <- (p - alpha q) / z,  q <- q - alpha p
    for (long k = 0; k < order_; ++k) {
      mpq_mul(t.get_mpq_t(), alpha.get_mpq_t(), q_[k + 1].get_mpq_t());
      mpq_class np = p_[k + 1] - t;
      mpq_mul(t.get_mpq_t(), alpha.get_mpq_t(), p_[k].get_mpq_t());
      q_[k] -= t;
      p_[k] = std::move(np);
    }
    --order_;
    p_.resize(static_cast<std::size_t>(order_ + 1));
    q_.resize(static_cast<std::size_t>(order_ + 1));
    normalize();
  }

 private:
  void normalize() {
    if (q_.empty() || q_[0] == 1) return;
    const mpq_class inv = 1 / q_[0];
    for (auto& x : p_) x *= inv;
    for (auto& x : q_) x *= inv;
  }

  long order_;
  std::vector<mpq_class> p_, q_;
};

}  // namespace detail

/// alpha_0 .. alpha_{count-1} of the measure whose Caratheodory series is F.
/// Requires F.valid_order >= count + 1.
inline std::vector<Rational> extract_verblunsky(const TruncatedSeries& F, std::size_t count) {
  if (F.valid_order() < static_cast<long>(count) + 1)
    throw PrecisionExhausted("extract_verblunsky: " + std::to_string(count) +
                             " parameters need valid_order >= " + std::to_string(count + 1) +
                             ", have " + std::to_string(F.valid_order()));
  std::vector<Rational> alphas;
  alphas.reserve(count);
  detail::SchurQuotient f(F);
  for (std::size_t k = 0; k < count; ++k) {
    if (f.valid_order() < 1)
      throw PrecisionExhausted("Schur step " + std::to_string(k));
    Rational alpha = f.constant_term();
    check_in_disk(k, alpha);
    f.step(alpha.raw());
    alphas.push_back(std::move(alpha));
  }
  return alphas;
}

/// Parameters of MU from those of NU: three zeros before, and between,
/// consecutive NU parameters (alpha_{4m+3} = nu_m).
inline std::vector<Rational> interleave_quartic(std::span<const Rational> nu_alphas) {
  std::vector<Rational> out(4 * nu_alphas.size());
  for (std::size_t m = 0; m < nu_alphas.size(); ++m) out[4 * m + 3] = nu_alphas[m];
  return out;
}

/// Schur function of MU through z^order, computed on the NU side as
/// f(z) = z^3 g(z^4).
inline TruncatedSeries riesz_schur_series(long order) {
  const long g_order = order < 3 ? 0 : (order - 3) / 4;
  const auto g = schur_from_caratheodory(caratheodory_series(g_order + 1, MeasureVariant::NU));
  auto f = series_shift_up(series_substitute_quartic(g), 3);
  if (f.valid_order() < order)
    throw PrecisionExhausted("riesz_schur_series");
  return TruncatedSeries(f.coefficients(), order);
}

/// First-return amplitudes; amplitude(n) is the amplitude of the first
/// return to the initial state after exactly n steps, n >= 1.
struct FirstReturnSeries {
  std::vector<Rational> amplitudes;  // amplitudes[n - 1] <-> step n

  std::size_t size() const { return amplitudes.size(); }
  const Rational& amplitude(std::size_t n) const { return amplitudes.at(n - 1); }
};

/// The first return at step n is the z^{n-1} coefficient of the Schur
/// function (fixed by agreement with renewal_first_return).
inline FirstReturnSeries first_return_series(const TruncatedSeries& f, std::size_t max_n) {
  if (max_n > 0 && static_cast<long>(max_n) - 1 > f.valid_order())
    throw InsufficientPrecision("first_return_series: step " + std::to_string(max_n) +
                                " needs Schur coefficients through order " +
                                std::to_string(max_n - 1));
  FirstReturnSeries out;
  out.amplitudes.reserve(max_n);
  for (std::size_t n = 1; n <= max_n; ++n) out.amplitudes.push_back(f[static_cast<long>(n) - 1]);
  return out;
}

/// Renewal inversion: with r(z) = sum_{n>=0} mu_n z^n, the first-return
/// generating function is a(z) = 1 - 1/r(z). Uses mu_0 .. mu_{max_n}.
inline FirstReturnSeries renewal_first_return(std::span<const Rational> moments,
                                              std::size_t max_n) {
  if (moments.size() < max_n + 1)
    throw std::invalid_argument("renewal_first_return: need moments mu_0..mu_" +
                                std::to_string(max_n));
  const auto r = TruncatedSeries(std::vector<Rational>(moments.begin(), moments.begin() + max_n + 1),
                                 static_cast<long>(max_n));
  const auto inv = series_reciprocal(r);
  FirstReturnSeries out;
  out.amplitudes.reserve(max_n);
  for (std::size_t n = 1; n <= max_n; ++n) out.amplitudes.push_back(-inv[static_cast<long>(n)]);
  return out;
}

/// Partial sums of squared amplitudes: entry n-1 is sum_{k<=n} a_k^2.
inline std::vector<Rational> cumulative_return_probability(const FirstReturnSeries& a) {
  std::vector<Rational> out;
  out.reserve(a.size());
  Rational acc(0);
  for (const auto& x : a.amplitudes) {
    acc += x * x;
    out.push_back(acc);
  }
  return out;
}

}  // namespace rieszwalk
