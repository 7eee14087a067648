// Exact arbitrary-precision rationals used for every quantity in the engine.
#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace thermflow {

/// An exact fraction kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Accepts "p", "-p", "p/q" and exact decimals "d.ddd" (optionally signed).
  /// Throws std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);

  /// Lowest-terms form: "p" for integers, otherwise "p/q".
  std::string str() const;

  const mpq_class& raw() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_), Canonical{}); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);
  friend Rational abs(const Rational& x);
  friend Rational pow(const Rational& x, unsigned n);

 private:
  // Wraps a value already in lowest terms without another gcd pass.
  struct Canonical {};
  Rational(mpq_class value, Canonical) : value_(std::move(value)) {}

  mpq_class value_;
};

Rational abs(const Rational& x);

/// x^n by repeated squaring; x^0 == 1.
Rational pow(const Rational& x, unsigned n);

/// Fixed-point decimal with exactly `precision` fractional digits, truncated
/// toward zero. Negative values carry a leading '-'.
std::string display(const Rational& x, int precision);

}  // namespace thermflow
