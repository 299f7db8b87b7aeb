#pragma once

// Quantum walks on the non-negative integers: coined walks, the Riesz walk,
// time evolution, position laws and numeric first-return amplitudes.
//
// Basis ordering: index 2i <-> |i> (x) |up>, index 2i+1 <-> |i> (x) |down>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszwalk/ansatz.hpp"
#include "rieszwalk/cmv.hpp"

namespace rieszwalk {

struct NonUnitaryCoin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ZeroCoin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CoinMatrix {
  Complex c11, c12, c21, c22;

  /// max |(C^* C - I)_{ij}|
  double unitarity_error() const {
    const Complex g11 = std::norm(c11) + std::norm(c21);
    const Complex g22 = std::norm(c12) + std::norm(c22);
    const Complex g12 = std::conj(c11) * c12 + std::conj(c21) * c22;
    return std::max({std::abs(g11 - 1.0), std::abs(g22 - 1.0), std::abs(g12)});
  }

  void validate(double tolerance = 1e-12) const {
    if (!(unitarity_error() <= tolerance))
      throw NonUnitaryCoin("coin is not unitary (error " + std::to_string(unitarity_error()) + ")");
  }

  static CoinMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s, s, -s};
  }

  static CoinMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

/// One-step transitions of a coined walk, rows as sources:
///   |i,up>   -> |i+1,up> (c11), |i-1,down> (c21)
///   |i,down> -> |i+1,up> (c12), |i-1,down> (c22)
/// with |-1,down> identified with |0,up>. coins[i] is the coin at site i.
inline BandedUnitary coined_walk_matrix(std::span<const CoinMatrix> coins, std::size_t dim) {
  if (dim < 4) throw DimensionTooSmall("coined_walk_matrix: dim must be >= 4");
  const std::size_t sites = (dim + 1) / 2;
  if (coins.size() < sites)
    throw DimensionMismatch("coined_walk_matrix: need " + std::to_string(sites) +
                            " coins, have " + std::to_string(coins.size()));
  BandedUnitary m(dim);
  for (std::size_t i = 0; i < sites; ++i) {
    const auto& c = coins[i];
    c.validate();
    const long up = static_cast<long>(2 * i), down = up + 1;
    const long left = i == 0 ? 0 : up - 1;
    m.set(static_cast<std::size_t>(up), left, c.c21);
    m.set(static_cast<std::size_t>(up), up + 2, c.c11);
    m.set(static_cast<std::size_t>(down), left, c.c22);
    m.set(static_cast<std::size_t>(down), up + 2, c.c12);
  }
  return m;
}

/// (a, 0, a, 0, ...) of length count.
inline std::vector<VerblunskyCoefficient> alternating_alpha(Complex a, std::size_t count) {
  std::vector<VerblunskyCoefficient> out;
  out.reserve(count);
  const VerblunskyCoefficient nonzero(a), zero(Complex{});
  for (std::size_t k = 0; k < count; ++k) out.push_back(k % 2 == 0 ? nonzero : zero);
  return out;
}

/// A constant-coin walk matrix U equals, up to a diagonal unitary change
/// of basis, rotation * CMV(a, 0, a, 0, ...).
struct ConstantCoinCmv {
  Complex a;
  Complex rotation;
};

/// Solves for (a, rotation) from two gauge invariants of the coined walk:
/// the diagonal entry U_00 = c21 = rotation * conj(a) and the loop
/// U_10 U_02 U_21 = c22 c11 c21 = rotation^3 rho^2 conj(a). The root of
/// rotation^2 = c11 c22 / rho^2 with argument in (-pi/2, pi/2] is taken.
inline ConstantCoinCmv constant_coin_cmv(const CoinMatrix& coin) {
  coin.validate();
  const double rho2 = 1.0 - std::norm(coin.c21);
  if (!(rho2 > 0.0)) throw NonUnitaryCoin("constant_coin_cmv: |c21| = 1 gives |a| = 1");
  Complex rotation = std::sqrt(coin.c11 * coin.c22 / rho2);
  rotation /= std::abs(rotation);
  if (rotation.real() < 0.0 || (rotation.real() == 0.0 && rotation.imag() < 0.0))
    rotation = -rotation;
  return {std::conj(coin.c21 / rotation), rotation};
}

/// Verblunsky parameters (a, 0, a, 0, ...) of the Hadamard walk; |a| = 1/sqrt 2.
inline std::vector<VerblunskyCoefficient> hadamard_alpha(std::size_t count) {
  return alternating_alpha(constant_coin_cmv(CoinMatrix::hadamard()).a, count);
}

/// Finds unimodular d with d_j U_jk conj(d_k) = C_jk for all entries, or
/// nullopt if no such diagonal equivalence exists (to `tolerance`).
inline std::optional<std::vector<Complex>> diagonal_equivalence(const BandedUnitary& u,
                                                                 const BandedUnitary& c,
                                                                 double tolerance = 1e-12) {
  const std::size_t n = u.dimension();
  if (c.dimension() != n) return std::nullopt;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = r >= 2 ? r - 2 : 0; k < n && k <= r + 2; ++k)
      if (std::abs(std::abs(u(r, k)) - std::abs(c(r, k))) > tolerance) return std::nullopt;

  std::vector<Complex> d(n);
  std::vector<bool> known(n, false);
  // Indices are processed in order; each new index is fixed by an entry
  // linking it to an already known one.
  known[0] = true;
  d[0] = 1.0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t k = r >= 2 ? r - 2 : 0; k < n && k <= r + 2; ++k) {
        const Complex ur = u(r, k);
        if (std::abs(ur) <= tolerance || known[r] == known[k]) continue;
        if (known[r]) {
          d[k] = std::conj(c(r, k) / (d[r] * ur));
          d[k] /= std::abs(d[k]);
          known[k] = true;
        } else {
          d[r] = c(r, k) / (ur * std::conj(d[k]));
          d[r] /= std::abs(d[r]);
          known[r] = true;
        }
        progress = true;
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (!known[r]) d[r] = 1.0;
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = r >= 2 ? r - 2 : 0; k < n && k <= r + 2; ++k)
      if (std::abs(d[r] * u(r, k) * std::conj(d[k]) - c(r, k)) > tolerance) return std::nullopt;
  return d;
}

/// Multiplies every entry by a scalar.
inline BandedUnitary scaled(const BandedUnitary& m, Complex factor) {
  BandedUnitary out(m.dimension());
  const std::size_t n = m.dimension();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = r >= 2 ? r - 2 : 0; k < n && k <= r + 2; ++k)
      out.set(r, static_cast<long>(k), m(r, k) * factor);
  return out;
}

/// alpha_0 .. alpha_{count-1} of the Riesz measure, from the closed form.
inline std::vector<VerblunskyCoefficient> riesz_alpha(std::size_t count) {
  std::vector<VerblunskyCoefficient> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j)
    out.push_back(VerblunskyCoefficient::from_rational(alpha(static_cast<std::int64_t>(j))));
  return out;
}

inline BandedUnitary riesz_walk_matrix(std::size_t dim) {
  const auto alphas = riesz_alpha(dim);
  return build_cmv(alphas, dim);
}

/// Smallest dimension that simulates `steps` steps from the origin exactly.
inline std::size_t walk_dimension(std::size_t steps) { return 2 * steps + 8; }

struct WalkState {
  std::vector<Complex> amplitudes;
  std::size_t steps = 0;

  /// |0> (x) |up> in a space of the given dimension.
  static WalkState origin(std::size_t dim) {
    WalkState s{std::vector<Complex>(dim), 0};
    s.amplitudes.at(0) = 1.0;
    return s;
  }

  double norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes) total += std::norm(a);
    return total;
  }

  /// Largest index with a nonzero amplitude, or nullopt for the zero vector.
  std::optional<std::size_t> support_end() const {
    for (std::size_t k = amplitudes.size(); k-- > 0;)
      if (amplitudes[k] != Complex{}) return k;
    return std::nullopt;
  }
};

/// Applies M `steps` times. Requires enough room that the support never
/// reaches the truncated boundary: dim >= support_end + 2 steps + 8.
inline WalkState evolve(const BandedUnitary& m, const WalkState& initial, std::size_t steps) {
  if (initial.amplitudes.size() != m.dimension())
    throw DimensionMismatch("evolve: state and matrix dimensions differ");
  const std::size_t end = initial.support_end().value_or(0);
  if (m.dimension() < end + 2 * steps + 8)
    throw DimensionTooSmall("evolve: " + std::to_string(steps) + " steps need dimension >= " +
                            std::to_string(end + 2 * steps + 8));
  WalkState s = initial;
  for (std::size_t k = 0; k < steps; ++k) s.amplitudes = apply_from_source(s.amplitudes, m);
  s.steps += steps;
  return s;
}

struct PositionDistribution {
  std::vector<double> probabilities;  // indexed by site
  std::size_t steps = 0;

  double total() const {
    double t = 0.0;
    for (double p : probabilities) t += p;
    return t;
  }
};

inline PositionDistribution position_distribution(const WalkState& state) {
  PositionDistribution out;
  out.steps = state.steps;
  const auto& a = state.amplitudes;
  out.probabilities.resize((a.size() + 1) / 2);
  for (std::size_t k = 0; k < a.size(); ++k) out.probabilities[k / 2] += std::norm(a[k]);
  return out;
}

/// Floating-point renewal inversion: a_n = r_n - sum_{k=1}^{n-1} a_k r_{n-k}.
/// Input r_0..r_N with r_0 = 1; output a_1..a_N.
inline std::vector<Complex> renewal_invert(std::span<const Complex> returns) {
  std::vector<Complex> a(returns.size());
  for (std::size_t n = 1; n < returns.size(); ++n) {
    Complex acc = returns[n];
    for (std::size_t k = 1; k < n; ++k) acc -= a[k] * returns[n - k];
    a[n] = acc;
  }
  if (!a.empty()) a.erase(a.begin());
  return a;
}

/// First-return amplitudes a_1..a_{max_n} to the first basis state, from
/// the return amplitudes (M^n)_{0,0}.
inline std::vector<Complex> first_return_numeric(const BandedUnitary& m, std::size_t max_n) {
  const auto r = spectral_moments(m, max_n);
  return renewal_invert(r);
}

namespace series_fp {

using Coeffs = std::vector<Complex>;

inline Coeffs mul(const Coeffs& a, const Coeffs& b, std::size_t len) {
  Coeffs out(len);
  for (std::size_t i = 0; i < std::min(len, a.size()); ++i) {
    if (a[i] == Complex{}) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Coeffs reciprocal(const Coeffs& a, std::size_t len) {
  if (a.empty() || a[0] == Complex{}) throw std::domain_error("reciprocal: zero constant term");
  Coeffs b(len);
  b[0] = 1.0 / a[0];
  for (std::size_t n = 1; n < len; ++n) {
    Complex acc{};
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * b[n - k];
    b[n] = -acc * b[0];
  }
  return b;
}

/// Square root with y(0) = sqrt(s(0)) (principal branch), by the Newton
/// iteration y <- (y + s/y)/2, doubling the number of correct terms.
inline Coeffs sqrt(const Coeffs& s, std::size_t len) {
  if (s.empty() || s[0] == Complex{}) throw std::domain_error("sqrt: zero constant term");
  Coeffs y{std::sqrt(s[0])};
  std::size_t have = 1;
  while (have < len) {
    have = std::min(2 * have, len);
    y.resize(have);
    const Coeffs q = mul(s, reciprocal(y, have), have);
    for (std::size_t k = 0; k < have; ++k) y[k] = 0.5 * (y[k] + q[k]);
  }
  y.resize(len);
  return y;
}

}  // namespace series_fp

/// Taylor coefficients f_0..f_{max_order} of the Schur function of
/// CMV(a, 0, a, 0, ...):
///   f(z) = (z^2 - 1 + sqrt((z^2 - 1)^2 + 4|a|^2 z^2)) / (2 conj(a) z^2).
inline std::vector<Complex> constant_coin_schur_coeffs(Complex a, std::size_t max_order) {
  if (a == Complex{}) throw ZeroCoin("constant_coin_schur_coeffs: a = 0");
  const std::size_t len = max_order + 3;
  series_fp::Coeffs s(std::max<std::size_t>(len, 5));
  s[0] = 1.0;
  s[2] = 4.0 * std::norm(a) - 2.0;
  s[4] = 1.0;
  auto root = series_fp::sqrt(s, len);
  root[0] -= 1.0;
  if (len > 2) root[2] += 1.0;
  std::vector<Complex> f(max_order + 1);
  const Complex denom = 2.0 * std::conj(a);
  for (std::size_t k = 0; k <= max_order; ++k) f[k] = root[k + 2] / denom;
  return f;
}

/// F_0 = 1, F_j = 2 conj(r_j): the Caratheodory coefficients of the
/// spectral measure with moments r_j.
inline std::vector<Complex> caratheodory_from_moments(std::span<const Complex> r) {
  std::vector<Complex> out(r.size());
  if (!out.empty()) out[0] = 1.0;
  for (std::size_t j = 1; j < r.size(); ++j) out[j] = 2.0 * std::conj(r[j]);
  return out;
}

namespace detail {

template <typename T>
std::vector<T> reflect_times_self(std::span<const T> f) {
  std::vector<T> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; i + j < f.size(); ++j) {
      if (i % 2 == 0) out[i + j] += f[i] * f[j];
      else out[i + j] -= f[i] * f[j];
    }
  return out;
}

}  // namespace detail

/// F(-z) F(z) = 1 through the given order: the walk is a traditional
/// (coined) one, i.e. its odd Verblunsky parameters vanish.
inline bool traditional_walk_test(std::span<const Rational> F) {
  const auto p = detail::reflect_times_self(F);
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != Rational(k == 0 ? 1 : 0)) return false;
  return true;
}

inline bool traditional_walk_test(std::span<const Complex> F, double tolerance = 1e-10) {
  const auto p = detail::reflect_times_self(F);
  for (std::size_t k = 0; k < p.size(); ++k)
    if (std::abs(p[k] - (k == 0 ? Complex(1.0) : Complex{})) > tolerance) return false;
  return true;
}

}  // namespace rieszwalk
