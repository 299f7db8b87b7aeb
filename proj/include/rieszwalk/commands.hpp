#pragma once

// Command implementations behind the `rieszwalk` tool. Each command builds
// an OutputTable and an exit status; argument parsing and file output live
// in tools/rieszwalk.cpp.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszwalk/ansatz.hpp"
#include "rieszwalk/cmv.hpp"
#include "rieszwalk/riesz_measure.hpp"
#include "rieszwalk/schur.hpp"
#include "rieszwalk/table.hpp"
#include "rieszwalk/walk.hpp"

namespace rieszwalk::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

/// Thrown for malformed user input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  CommandResult(OutputTable t, int code = kOk, std::string diag = {})  // NOLINT
      : table(std::move(t)), exit_code(code), diagnostic(std::move(diag)) {}

  OutputTable table;
  int exit_code = kOk;
  std::string diagnostic;  // written to stderr
};

enum class CoinKind { Riesz, Hadamard, File };

struct CoinSpec {
  CoinKind kind = CoinKind::Riesz;
  std::vector<CoinMatrix> coins;  // File only
  std::string label;
};

inline Complex parse_complex(const std::string& token, std::size_t line) {
  const auto comma = token.find(',');
  auto fail = [&] {
    return UsageError("coin file line " + std::to_string(line) + ": bad entry '" + token +
                      "' (expected re,im)");
  };
  if (comma == std::string::npos) throw fail();
  try {
    std::size_t used = 0;
    const std::string re_s = token.substr(0, comma), im_s = token.substr(comma + 1);
    const double re = std::stod(re_s, &used);
    if (used != re_s.size()) throw fail();
    const double im = std::stod(im_s, &used);
    if (used != im_s.size()) throw fail();
    return {re, im};
  } catch (const std::logic_error&) {
    throw fail();
  }
}

/// One coin per line: "re,im re,im re,im re,im" for c11 c12 c21 c22.
/// Blank lines and lines starting with '#' are skipped.
inline std::vector<CoinMatrix> parse_coin_file(std::istream& in) {
  std::vector<CoinMatrix> coins;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.size() != 4)
      throw UsageError("coin file line " + std::to_string(lineno) + ": expected 4 entries, got " +
                       std::to_string(tokens.size()));
    CoinMatrix c{parse_complex(tokens[0], lineno), parse_complex(tokens[1], lineno),
                 parse_complex(tokens[2], lineno), parse_complex(tokens[3], lineno)};
    if (!(c.unitarity_error() <= 1e-12))
      throw UsageError("coin file line " + std::to_string(lineno) + ": coin is not unitary");
    coins.push_back(c);
  }
  if (coins.empty()) throw UsageError("coin file contains no coins");
  return coins;
}

inline CoinSpec parse_coin(const std::string& text) {
  if (text == "riesz") return {CoinKind::Riesz, {}, text};
  if (text == "hadamard") return {CoinKind::Hadamard, {}, text};
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open coin file '" + path + "'");
    return {CoinKind::File, parse_coin_file(in), text};
  }
  throw UsageError("unknown coin '" + text + "' (riesz, hadamard, file:PATH)");
}

/// Coins for sites 0..sites-1; a file shorter than that repeats its last coin.
inline std::vector<CoinMatrix> coins_for_sites(const CoinSpec& spec, std::size_t sites) {
  std::vector<CoinMatrix> out;
  out.reserve(sites);
  for (std::size_t i = 0; i < sites; ++i) {
    if (spec.kind == CoinKind::Hadamard) out.push_back(CoinMatrix::hadamard());
    else out.push_back(spec.coins[std::min(i, spec.coins.size() - 1)]);
  }
  return out;
}

/// The evolution matrix of the walk selected by `spec`.
inline BandedUnitary walk_matrix(const CoinSpec& spec, std::size_t dim) {
  if (spec.kind == CoinKind::Riesz) return riesz_walk_matrix(dim);
  const auto coins = coins_for_sites(spec, (dim + 1) / 2);
  return coined_walk_matrix(coins, dim);
}

inline OutputTable matrix_table(const BandedUnitary& m) {
  OutputTable t({"row", "col", "real", "imag"});
  const std::size_t n = m.dimension();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = r >= 2 ? r - 2 : 0; k < n && k <= r + 2; ++k) {
      const Complex v = m(r, k);
      if (v == Complex{}) continue;
      t.add_row({static_cast<std::int64_t>(r), static_cast<std::int64_t>(k), v.real(), v.imag()});
    }
  return t;
}

inline CommandResult cmd_moments(long max_degree, MeasureVariant variant) {
  if (max_degree < 0) throw UsageError("--max must be >= 0");
  CommandResult res{OutputTable({"j", "moment"})};
  for (long j = 0; j <= max_degree; ++j)
    res.table.add_row({static_cast<std::int64_t>(j), moment(j, variant)});
  return res;
}

enum class VerblunskyMethod { Schur, Ansatz, Both };

/// The first `count` non-null parameters. Indices are Verblunsky indices of
/// the chosen variant: 4m - 1 for MU, m - 1 for NU.
inline CommandResult cmd_verblunsky(std::size_t count, VerblunskyMethod method,
                                    MeasureVariant variant) {
  auto index_of = [&](std::size_t m) {
    return static_cast<std::int64_t>(variant == MeasureVariant::MU ? 4 * m - 1 : m - 1);
  };
  std::vector<Rational> schur;
  if (method != VerblunskyMethod::Ansatz)
    schur = extract_verblunsky(caratheodory_series(static_cast<long>(count) + 1, MeasureVariant::NU),
                               count);
  if (method == VerblunskyMethod::Schur) {
    CommandResult res{OutputTable({"index", "alpha"})};
    for (std::size_t m = 1; m <= count; ++m) res.table.add_row({index_of(m), schur[m - 1]});
    return res;
  }
  if (method == VerblunskyMethod::Ansatz) {
    CommandResult res{OutputTable({"index", "alpha"})};
    for (std::size_t m = 1; m <= count; ++m)
      res.table.add_row({index_of(m), xi(static_cast<std::int64_t>(m))});
    return res;
  }
  CommandResult res{OutputTable({"index", "schur", "ansatz", "equal"})};
  for (std::size_t m = 1; m <= count; ++m) {
    auto closed = xi(static_cast<std::int64_t>(m));
    const bool equal = closed == schur[m - 1];
    if (!equal && res.exit_code == kOk) {
      res.exit_code = kVerificationFailed;
      res.diagnostic = "mismatch at index " + std::to_string(index_of(m)) + ": schur " +
                       schur[m - 1].to_string() + ", ansatz " + closed.to_string();
    }
    res.table.add_row(
        {index_of(m), schur[m - 1], std::move(closed), std::string(equal ? "true" : "false")});
  }
  return res;
}

inline CommandResult cmd_backbone(std::size_t count) {
  CommandResult res{OutputTable({"i", "A"})};
  for (std::size_t i = 1; i <= count; ++i)
    res.table.add_row({static_cast<std::int64_t>(i), backbone_A(static_cast<std::int64_t>(i))});
  return res;
}

/// Rows (family, i, value) for -2/K_i (i >= 1), 4/(K_i+3) and -2/(K_i+6) (i >= 0).
inline CommandResult cmd_limits(std::size_t count) {
  CommandResult res{OutputTable({"family", "i", "value"})};
  const auto lv = limit_values(count);
  for (std::size_t k = 0; k < count; ++k)
    res.table.add_row({std::int64_t{1}, static_cast<std::int64_t>(k + 1), lv.family1[k]});
  for (std::size_t k = 0; k < count; ++k)
    res.table.add_row({std::int64_t{2}, static_cast<std::int64_t>(k), lv.family2[k]});
  for (std::size_t k = 0; k < count; ++k)
    res.table.add_row({std::int64_t{3}, static_cast<std::int64_t>(k), lv.family3[k]});
  return res;
}

enum class WalkEmit { Distribution, NormTrace, Matrix };

/// Walk from |0,up>. The distribution has one row per site 0..steps with
/// both the per-site probability and the density in x = site/steps.
inline CommandResult cmd_walk(const CoinSpec& coin, std::size_t steps, WalkEmit emit) {
  const std::size_t dim = walk_dimension(steps);
  const auto m = walk_matrix(coin, dim);
  if (emit == WalkEmit::Matrix) return {matrix_table(m)};
  if (emit == WalkEmit::NormTrace) {
    CommandResult res{OutputTable({"step", "norm_squared"})};
    auto state = WalkState::origin(dim);
    res.table.add_row({std::int64_t{0}, state.norm_squared()});
    for (std::size_t k = 1; k <= steps; ++k) {
      state = evolve(m, state, 1);
      res.table.add_row({static_cast<std::int64_t>(k), state.norm_squared()});
    }
    return res;
  }
  const auto state = evolve(m, WalkState::origin(dim), steps);
  const auto dist = position_distribution(state);
  CommandResult res{OutputTable({"site", "x_over_n", "probability", "density"})};
  const double n = static_cast<double>(steps);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double p = dist.probabilities[i];
    const double x = steps == 0 ? 0.0 : static_cast<double>(i) / n;
    res.table.add_row({static_cast<std::int64_t>(i), x, p, steps == 0 ? p : p * n});
  }
  return res;
}

enum class FirstReturnMethod { Exact, Numeric, Both };

inline constexpr double kFirstReturnTolerance = 1e-8;

inline CommandResult cmd_first_return(const CoinSpec& coin, std::size_t max_steps,
                                      FirstReturnMethod method) {
  if (method != FirstReturnMethod::Numeric && coin.kind == CoinKind::File)
    throw UsageError("first-return: only --method numeric is available for coin files");
  if (method == FirstReturnMethod::Exact && coin.kind != CoinKind::Riesz)
    throw UsageError("first-return: --method exact needs --coin riesz");

  std::vector<Complex> numeric;
  if (method != FirstReturnMethod::Exact)
    numeric = first_return_numeric(walk_matrix(coin, walk_dimension(max_steps)), max_steps);

  if (method == FirstReturnMethod::Numeric) {
    CommandResult res{OutputTable({"n", "amplitude", "amplitude_imag", "cumulative_probability"})};
    double acc = 0.0;
    for (std::size_t n = 1; n <= max_steps; ++n) {
      const Complex a = numeric[n - 1];
      acc += std::norm(a);
      res.table.add_row({static_cast<std::int64_t>(n), a.real(), a.imag(), acc});
    }
    return res;
  }

  if (coin.kind == CoinKind::Riesz) {
    const auto f = riesz_schur_series(max_steps == 0 ? 0 : static_cast<long>(max_steps) - 1);
    const auto exact = first_return_series(f, max_steps);
    const auto cumulative = cumulative_return_probability(exact);
    if (method == FirstReturnMethod::Exact) {
      CommandResult res{OutputTable({"n", "amplitude", "cumulative_probability"})};
      for (std::size_t n = 1; n <= max_steps; ++n)
        res.table.add_row({static_cast<std::int64_t>(n), exact.amplitude(n), cumulative[n - 1]});
      return res;
    }
    CommandResult res{OutputTable(
        {"n", "amplitude", "cumulative_probability", "numeric_amplitude", "discrepancy"})};
    for (std::size_t n = 1; n <= max_steps; ++n) {
      const double gap = std::abs(numeric[n - 1] - exact.amplitude(n).to_double());
      if (gap > kFirstReturnTolerance && res.exit_code == kOk) {
        res.exit_code = kVerificationFailed;
        res.diagnostic = "discrepancy " + format_double(gap) + " at n = " + std::to_string(n);
      }
      res.table.add_row({static_cast<std::int64_t>(n), exact.amplitude(n), cumulative[n - 1],
                         numeric[n - 1].real(), gap});
    }
    return res;
  }

  // Hadamard: compare the walk matrix with the closed-form Schur function of
  // the equivalent CMV matrix. Return amplitudes of U are rotation^n times
  // those of C, and first returns of C are conjugated Schur coefficients.
  const auto eq = constant_coin_cmv(CoinMatrix::hadamard());
  const auto closed = constant_coin_schur_coeffs(eq.a, max_steps == 0 ? 0 : max_steps - 1);
  CommandResult res{OutputTable(
      {"n", "amplitude", "cumulative_probability", "numeric_amplitude", "discrepancy"})};
  double acc = 0.0;
  Complex power = 1.0;
  for (std::size_t n = 1; n <= max_steps; ++n) {
    power *= eq.rotation;
    const Complex a = power * std::conj(closed[n - 1]);
    acc += std::norm(a);
    const double gap = std::abs(numeric[n - 1] - a);
    if (gap > kFirstReturnTolerance && res.exit_code == kOk) {
      res.exit_code = kVerificationFailed;
      res.diagnostic = "discrepancy " + format_double(gap) + " at n = " + std::to_string(n);
    }
    res.table.add_row({static_cast<std::int64_t>(n), a.real(), acc, numeric[n - 1].real(), gap});
  }
  return res;
}

/// Nonzero entries of the truncated CMV matrix for the Riesz or Hadamard
/// Verblunsky parameters.
inline CommandResult cmd_cmv(const CoinSpec& coin, std::size_t dim) {
  if (dim < 2) throw UsageError("--dim must be >= 2");
  if (coin.kind == CoinKind::Riesz) return {matrix_table(build_cmv(riesz_alpha(dim), dim))};
  if (coin.kind == CoinKind::Hadamard) return {matrix_table(build_cmv(hadamard_alpha(dim), dim))};
  throw UsageError("cmv: --coin must be riesz or hadamard");
}

}  // namespace rieszwalk::cli
