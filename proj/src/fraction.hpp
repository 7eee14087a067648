// Fractions outside lowest terms, for intermediate sums and comparisons.
// Arithmetic never reduces; to_rational() does, once.
#pragma once

#include <stdexcept>

#include <gmpxx.h>

#include "thermflow/rational.hpp"

namespace thermflow::detail {

class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  explicit Fraction(const Rational& r) : num_(r.raw().get_num()), den_(r.raw().get_den()) {}

  Rational to_rational() const { return Rational(mpq_class(num_, den_)); }

  int sign() const { return sgn(num_); }

  Fraction& operator+=(const Fraction& o) { return accumulate(o, 1); }
  Fraction& operator-=(const Fraction& o) { return accumulate(o, -1); }

  Fraction& operator*=(const Fraction& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    return *this;
  }

  Fraction& operator/=(const Fraction& o) {
    if (o.sign() == 0) throw std::domain_error("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    if (sgn(den_) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    return *this;
  }

  Fraction operator-() const {
    Fraction f = *this;
    f.num_ = -f.num_;
    return f;
  }

  friend Fraction abs(const Fraction& f) { return f.sign() < 0 ? -f : f; }

  friend int compare(const Fraction& a, const Fraction& b) {
    return cmp(mpz_class(a.num_ * b.den_), mpz_class(b.num_ * a.den_));
  }

 private:
  Fraction& accumulate(const Fraction& o, int direction) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
    mpz_class scale = o.den_ / g;
    num_ *= scale;
    if (direction > 0)
      num_ += o.num_ * (den_ / g);
    else
      num_ -= o.num_ * (den_ / g);
    den_ *= scale;
    return *this;
  }

  mpz_class num_;
  mpz_class den_;
};

}  // namespace thermflow::detail
