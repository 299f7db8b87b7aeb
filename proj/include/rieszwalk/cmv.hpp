#pragma once

// Finite CMV matrices and banded unitary evolution.
//
// Convention: rows are source states. A state vector v evolves as
// v'[k] = sum_j v[j] M[j,k], which reproduces the one-step amplitudes of
// the walk read along the rows of the CMV pattern.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszwalk/rational.hpp"

namespace rieszwalk {

using Complex = std::complex<double>;

struct CoefficientOutOfDisk : std::domain_error {
  using std::domain_error::domain_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class VerblunskyCoefficient {
 public:
  VerblunskyCoefficient() = default;

  explicit VerblunskyCoefficient(Complex value) : value_(value) {
    const double mod2 = std::norm(value);
    if (!(mod2 < 1.0))
      throw CoefficientOutOfDisk("Verblunsky coefficient with |alpha| >= 1");
    rho_ = std::sqrt(1.0 - mod2);
  }

  /// rho is evaluated from the exact value 1 - alpha^2 with a single final
  /// rounding to double.
  static VerblunskyCoefficient from_rational(const Rational& alpha) {
    const mpq_class one_minus = 1 - alpha.raw() * alpha.raw();
    if (sgn(one_minus) <= 0)
      throw CoefficientOutOfDisk("Verblunsky coefficient " + alpha.to_string() +
                                 " is not inside the unit disk");
    mpf_class x(one_minus, 256);
    mpf_class r(0, 256);
    mpf_sqrt(r.get_mpf_t(), x.get_mpf_t());
    VerblunskyCoefficient out;
    out.value_ = Complex(alpha.to_double(), 0.0);
    out.rho_ = r.get_d();
    return out;
  }

  Complex value() const { return value_; }
  double rho() const { return rho_; }

 private:
  Complex value_{0.0, 0.0};
  double rho_ = 1.0;
};

/// Square matrix with nonzero entries only for |row - col| <= 2.
class BandedUnitary {
 public:
  static constexpr int kHalfWidth = 2;

  BandedUnitary() = default;
  explicit BandedUnitary(std::size_t dimension)
      : dim_(dimension), bands_(dimension * (2 * kHalfWidth + 1)) {}

  std::size_t dimension() const { return dim_; }

  bool in_band(std::size_t row, std::size_t col) const {
    const auto r = static_cast<long>(row), c = static_cast<long>(col);
    return std::abs(r - c) <= kHalfWidth;
  }

  Complex operator()(std::size_t row, std::size_t col) const {
    if (row >= dim_ || col >= dim_ || !in_band(row, col)) return {};
    return bands_[slot(row, col)];
  }

  /// Writes an entry; columns outside the matrix are silently dropped
  /// (that is how truncation is expressed).
  void set(std::size_t row, long col, Complex value) {
    if (row >= dim_ || col < 0 || static_cast<std::size_t>(col) >= dim_) return;
    if (!in_band(row, static_cast<std::size_t>(col)))
      throw std::out_of_range("BandedUnitary: entry outside band");
    bands_[slot(row, static_cast<std::size_t>(col))] = value;
  }

  /// Entries M[row, row + offset] for offset in [-2, 2].
  std::span<const Complex> row_band(std::size_t row) const {
    return {bands_.data() + row * (2 * kHalfWidth + 1), 2 * kHalfWidth + 1};
  }

 private:
  std::size_t slot(std::size_t row, std::size_t col) const {
    return row * (2 * kHalfWidth + 1) +
           static_cast<std::size_t>(static_cast<long>(col) - static_cast<long>(row) + kHalfWidth);
  }

  std::size_t dim_ = 0;
  std::vector<Complex> bands_;
};

/// CMV matrix truncated to dim x dim. With the convention alpha_{-1} = -1
/// (rho_{-1} = 0), rows 2k and 2k+1 are
///   row 2k  : (2k,2k-1)=rho_{2k-1} conj(a_{2k}),  (2k,2k)=-a_{2k-1} conj(a_{2k}),
///             (2k,2k+1)=rho_{2k} conj(a_{2k+1}),  (2k,2k+2)=rho_{2k} rho_{2k+1}
///   row 2k+1: (2k+1,2k-1)=rho_{2k-1} rho_{2k},    (2k+1,2k)=-a_{2k-1} rho_{2k},
///             (2k+1,2k+1)=-a_{2k} conj(a_{2k+1}), (2k+1,2k+2)=-a_{2k} rho_{2k+1}
inline BandedUnitary build_cmv(std::span<const VerblunskyCoefficient> alphas, std::size_t dim) {
  if (dim < 2) throw DimensionTooSmall("build_cmv: dim must be >= 2");
  if (alphas.size() < dim)
    throw DimensionMismatch("build_cmv: need " + std::to_string(dim) + " coefficients, have " +
                            std::to_string(alphas.size()));
  auto a = [&](long i) -> Complex {
    if (i < 0) return -1.0;
    return static_cast<std::size_t>(i) < alphas.size() ? alphas[i].value() : Complex{};
  };
  auto rho = [&](long i) -> double {
    if (i < 0) return 0.0;
    return static_cast<std::size_t>(i) < alphas.size() ? alphas[i].rho() : 1.0;
  };
  BandedUnitary m(dim);
  for (long k = 0; 2 * k < static_cast<long>(dim); ++k) {
    const long e = 2 * k, o = 2 * k + 1;
    m.set(e, e - 1, rho(e - 1) * std::conj(a(e)));
    m.set(e, e, -a(e - 1) * std::conj(a(e)));
    m.set(e, e + 1, rho(e) * std::conj(a(o)));
    m.set(e, e + 2, rho(e) * rho(o));
    m.set(o, e - 1, rho(e - 1) * rho(e));
    m.set(o, e, -a(e - 1) * rho(e));
    m.set(o, o, -a(e) * std::conj(a(o)));
    m.set(o, e + 2, -a(e) * rho(o));
  }
  return m;
}

/// result[k] = sum_j state[j] M[j,k].
inline std::vector<Complex> apply_from_source(std::span<const Complex> state,
                                              const BandedUnitary& m) {
  const std::size_t n = m.dimension();
  if (state.size() != n)
    throw DimensionMismatch("apply_from_source: state has " + std::to_string(state.size()) +
                            " entries, matrix has dimension " + std::to_string(n));
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex s = state[j];
    if (s == Complex{}) continue;
    const auto band = m.row_band(j);
    for (int off = -BandedUnitary::kHalfWidth; off <= BandedUnitary::kHalfWidth; ++off) {
      const long k = static_cast<long>(j) + off;
      if (k < 0 || k >= static_cast<long>(n)) continue;
      out[static_cast<std::size_t>(k)] += s * band[off + BandedUnitary::kHalfWidth];
    }
  }
  return out;
}

/// max |<col_i, col_j> - delta_ij| over columns untouched by truncation
/// (the last two columns lose entries in the dropped rows).
inline double unitarity_defect(const BandedUnitary& m) {
  const std::size_t n = m.dimension();
  if (n <= 2) return 0.0;
  const std::size_t interior = n - 2;
  double worst = 0.0;
  for (std::size_t i = 0; i < interior; ++i) {
    for (std::size_t j = i; j < interior && j <= i + 2 * BandedUnitary::kHalfWidth; ++j) {
      Complex dot{};
      const std::size_t lo = j >= 2 ? j - 2 : 0;
      const std::size_t hi = std::min(n - 1, i + 2);
      for (std::size_t r = lo; r <= hi; ++r) dot += std::conj(m(r, i)) * m(r, j);
      worst = std::max(worst, std::abs(dot - (i == j ? Complex(1.0) : Complex{})));
    }
  }
  return worst;
}

/// (M^n)_{0,0} = integral of z^n against the spectral measure of the first
/// basis vector. Exact (up to rounding) when dim >= 2n + 3.
inline Complex spectral_moment(const BandedUnitary& m, std::size_t n) {
  if (m.dimension() < 2 * n + 3)
    throw DimensionTooSmall("spectral_moment: n = " + std::to_string(n) + " needs dimension >= " +
                            std::to_string(2 * n + 3));
  std::vector<Complex> v(m.dimension());
  v[0] = 1.0;
  for (std::size_t k = 0; k < n; ++k) v = apply_from_source(v, m);
  return v[0];
}

/// (M^n)_{0,0} for n = 0..max_n in a single sweep.
inline std::vector<Complex> spectral_moments(const BandedUnitary& m, std::size_t max_n) {
  if (m.dimension() < 2 * max_n + 3)
    throw DimensionTooSmall("spectral_moments: max_n = " + std::to_string(max_n) +
                            " needs dimension >= " + std::to_string(2 * max_n + 3));
  std::vector<Complex> out;
  out.reserve(max_n + 1);
  std::vector<Complex> v(m.dimension());
  v[0] = 1.0;
  out.push_back(v[0]);
  for (std::size_t k = 1; k <= max_n; ++k) {
    v = apply_from_source(v, m);
    out.push_back(v[0]);
  }
  return out;
}

}  // namespace rieszwalk
