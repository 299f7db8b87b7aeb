#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rieszwalk {

/// Exact rational number in canonical form (gcd(num, den) = 1, den >= 1).
///
/// Thin value wrapper over GMP's mpq_class. Every constructor and every
/// arithmetic result is canonicalized, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : v_(static_cast<long>(value)) {}  // NOLINT
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(mpz_class(static_cast<long>(num)),
                   mpz_class(static_cast<long>(den)));
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "num/den" or "num". Throws std::invalid_argument on bad input.
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    const auto slash = s.find('/');
    auto check_digits = [&](std::string_view part, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) ++i;
      if (i == part.size()) return false;
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') return false;
      return true;
    };
    std::string_view sv(s);
    if (slash == std::string::npos) {
      if (!check_digits(sv, true))
        throw std::invalid_argument("Rational::parse: '" + s + "'");
    } else if (!check_digits(sv.substr(0, slash), true) ||
               !check_digits(sv.substr(slash + 1), false)) {
      throw std::invalid_argument("Rational::parse: '" + s + "'");
    }
    if (s[0] == '+') s.erase(0, 1);
    mpq_class v;
    if (v.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational::parse: '" + s + "'");
    if (v.get_den() == 0)
      throw std::domain_error("Rational::parse: zero denominator");
    v.canonicalize();
    return Rational(std::move(v));
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }

  /// Always "num/den", including integers ("3/1").
  std::string to_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// 2^(-p) for p >= 0.
inline Rational inverse_power_of_two(unsigned p) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, p);
  return Rational(mpq_class(mpz_class(1), den));
}

/// 4^(-p) for p >= 0.
inline Rational inverse_power_of_four(unsigned p) { return inverse_power_of_two(2 * p); }

}  // namespace rieszwalk
