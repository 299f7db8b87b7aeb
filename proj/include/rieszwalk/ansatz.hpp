#pragma once

// Closed-form generator for the non-zero Verblunsky parameters of the Riesz
// measure MU, which sit at indices 4m - 1 (xi_m = alpha_{4m-1}).
//
// Two descriptions are implemented:
//  * a backbone A_i built from the residue classes v_j, with offset
//    formulas filling the seven parameters between consecutive anchors
//    alpha_{16(2p-1)-1} = -1/A_p;
//  * a three-case formula in constants K_i over the classes
//    B_n = { 1/3 + 4^p (3n-1)/3 : p >= 0 }, n != 3 (mod 4).
// xi() is the canonical generator; offset_alpha() is a cross-check.

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszwalk/rational.hpp"
#include "rieszwalk/riesz_measure.hpp"
#include "rieszwalk/schur.hpp"

namespace rieszwalk {

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct OutOfDomain : std::domain_error {
  using std::domain_error::domain_error;
};

namespace detail {

inline std::int64_t pow2(int e) {
  if (e < 0 || e > 61) throw IndexOutOfRange("2^" + std::to_string(e) + " out of range");
  return std::int64_t{1} << e;
}

inline std::int64_t neg2_pow(int e) { return (e % 2 == 0 ? 1 : -1) * pow2(e); }

}  // namespace detail

/// Offset of residue class v_j = { ((-2)^j - 1)/3 + k 2^{j+1} : k in Z }.
inline std::int64_t v_offset(int j) { return (detail::neg2_pow(j) - 1) / 3; }

/// First positive element of v_j.
inline std::int64_t d(int j) {
  if (j < 0) throw IndexOutOfRange("d: j < 0");
  if (j == 0) return 2;
  return v_offset(j) + (j % 2 == 0 ? 0 : 2) * detail::pow2(j);
}

/// c_n = 8 + ((-2)^{n-4} - 1) 2^5 / 3 for n >= 4.
inline std::int64_t c(int n) {
  if (n < 4) throw IndexOutOfRange("c: n = " + std::to_string(n) + " < 4");
  return 8 + (detail::neg2_pow(n - 4) - 1) * 32 / 3;
}

/// Number of positive elements of v_j not larger than n.
inline std::int64_t w(int j, std::int64_t n) {
  if (j < 0 || n < 0) throw IndexOutOfRange("w: negative argument");
  if (j >= 61) return 0;  // d_j exceeds any int64 n
  const std::int64_t gap = detail::pow2(j + 1);
  return (n + gap - d(j)) / gap;  // numerator >= 0 since 0 < d_j <= gap
}

/// u_n = sum_j w_{j,n} c_{4+j}. For even j, d_j = (2^j - 1)/3 and for odd
/// j, d_j = (5 * 2^j - 1)/3, so d_j >= (2^j - 1)/3 for every j >= 1. Once
/// (2^j - 1)/3 > n, every later w_{j,n} vanishes.
inline std::int64_t u(std::int64_t n) {
  if (n < 0) throw IndexOutOfRange("u: n < 0");
  std::int64_t total = 0;
  for (int j = 0; j < 61; ++j) {
    if (j >= 1 && (detail::pow2(j) - 1) / 3 > n) break;
    const auto count = w(j, n);
    if (count != 0) total += count * c(4 + j);
  }
  return total;
}

/// Memoized backbone A_1, A_2, ... Extension is serialized; reads of
/// already-computed entries are safe from any thread.
class Backbone {
 public:
  std::int64_t operator()(std::int64_t i) {
    if (i < 1) throw IndexOutOfRange("backbone_A: i < 1");
    std::lock_guard lock(mutex_);
    while (static_cast<std::int64_t>(values_.size()) < i)
      values_.push_back(13 + u(static_cast<std::int64_t>(values_.size())));
    return values_[static_cast<std::size_t>(i - 1)];
  }

  static Backbone& shared() {
    static Backbone instance;
    return instance;
  }

 private:
  std::mutex mutex_;
  std::vector<std::int64_t> values_;
};

/// A_i = 13 + u_{i-1}, i >= 1.
inline std::int64_t backbone_A(std::int64_t i) { return Backbone::shared()(i); }

/// K_0 = 3, K_{2i-1} = 3 A_i, K_{2i} = 3 (A_i - 4).
inline std::int64_t K(std::int64_t i) {
  if (i < 0) throw IndexOutOfRange("K: i < 0");
  if (i == 0) return 3;
  if (i % 2 == 1) return 3 * backbone_A((i + 1) / 2);
  return 3 * (backbone_A(i / 2) - 4);
}

/// m = 1/3 + 4^p (3n - 1)/3 with n != 3 (mod 4).
struct BIndex {
  std::int64_t m;
  std::int64_t n;
  int p;

  std::int64_t reconstruct() const { return (1 + (std::int64_t{1} << (2 * p)) * (3 * n - 1)) / 3; }
};

inline BIndex b_decompose(std::int64_t m) {
  if (m < 1) throw IndexOutOfRange("b_decompose: m < 1");
  std::int64_t t = 3 * m - 1;
  int p = 0;
  while (t % 4 == 0) {
    t /= 4;
    ++p;
  }
  return BIndex{m, (t + 1) / 3, p};
}

/// xi_m = alpha_{4m-1}, by the three-case K formula on the class of m.
inline Rational xi(std::int64_t m) {
  const auto b = b_decompose(m);
  const Rational quarter_p = inverse_power_of_four(static_cast<unsigned>(b.p));
  const std::int64_t s = b.n / 4;
  switch (b.n % 4) {
    case 0: return -(Rational(2) + quarter_p) / Rational(K(s));
    case 1: return (Rational(4) - quarter_p) / Rational(K(s) + 3);
    case 2: return -(Rational(2) + quarter_p) / Rational(K(s) + 6);
    default: throw std::logic_error("b_decompose produced n = 3 (mod 4)");
  }
}

/// alpha_j of MU: zero unless j = 3 (mod 4).
inline Rational alpha(std::int64_t j) {
  if (j < 0) throw IndexOutOfRange("alpha: j < 0");
  if (j % 4 != 3) return Rational(0);
  return xi((j + 1) / 4);
}

/// Backbone recipe: anchor alpha_{16(2p-1)-1} = -1/A_p and seven offsets
/// filling up to the next anchor. Defined for j >= 15, j = 3 (mod 4).
inline Rational offset_alpha(std::int64_t j) {
  if (j < 15 || j % 4 != 3)
    throw OutOfDomain("offset_alpha: index " + std::to_string(j) +
                      " is not >= 15 and 3 mod 4");
  const std::int64_t p = (j + 17) / 32;
  const std::int64_t r = j - 16 * (2 * p - 1);
  const std::int64_t a = backbone_A(p);
  switch (r) {
    case -1: return Rational(-1, a);
    case 3: return Rational(1, 1 + a);
    case 7: return Rational(-1, 2 + a);
    case 11: return Rational(-3, a - 1);
    case 15: return Rational(-1, a - 4);
    case 19: return Rational(1, a - 3);
    case 23: return Rational(-1, a - 2);
    case 27: {
      const std::int64_t next = backbone_A(p + 1);
      return Rational(next - a + 2, next + a - 2);
    }
    default: throw std::logic_error("offset_alpha: bad offset");
  }
}

/// First `count` members of each family of limit values:
///   -2/K_i (i >= 1),  4/(K_i + 3) (i >= 0),  -2/(K_i + 6) (i >= 0).
struct LimitValues {
  std::vector<Rational> family1, family2, family3;
};

inline LimitValues limit_values(std::size_t count) {
  LimitValues out;
  for (std::size_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::int64_t>(k);
    out.family1.emplace_back(-2, K(i + 1));
    out.family2.emplace_back(4, K(i) + 3);
    out.family3.emplace_back(-2, K(i) + 6);
  }
  return out;
}

struct VerificationReport {
  std::size_t checked = 0;
  std::optional<std::size_t> first_mismatch;  // m of the first disagreement
  Rational expected;                          // Schur value at the mismatch
  Rational actual;                            // xi value at the mismatch
  double seconds = 0;

  bool ok() const { return !first_mismatch.has_value(); }
};

/// Compares xi(1..count) with the Schur algorithm run on Riesz's measure NU,
/// whose m-th parameter is xi_{m+1}. Exact equality.
inline VerificationReport verify_ansatz(std::size_t count) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  const auto G = caratheodory_series(static_cast<long>(count) + 1, MeasureVariant::NU);
  const auto schur = extract_verblunsky(G, count);
  for (std::size_t m = 1; m <= count; ++m) {
    auto value = xi(static_cast<std::int64_t>(m));
    ++report.checked;
    if (value != schur[m - 1]) {
      report.first_mismatch = m;
      report.expected = schur[m - 1];
      report.actual = std::move(value);
      break;
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rieszwalk
