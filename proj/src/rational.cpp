#include "thermflow/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace thermflow {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  mpq_class value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) bad_literal(text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    value = mpq_class(digits, scale);
  } else {
    if (!all_digits(body)) bad_literal(text);
    value = mpq_class(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return Rational(std::move(value));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& x) { return Rational(mpq_class(::abs(x.value_)), Rational::Canonical{}); }

Rational pow(const Rational& x, unsigned n) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.raw().get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), x.raw().get_den_mpz_t(), n);
  // Powers of coprime integers stay coprime.
  mpq_class result;
  mpq_set_num(result.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(result.get_mpq_t(), den.get_mpz_t());
  return Rational(std::move(result), Rational::Canonical{});
}

std::string display(const Rational& x, int precision) {
  if (precision < 1) throw std::invalid_argument("display precision must be >= 1");
  mpq_class magnitude = ::abs(x.raw());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(precision));
  // floor(|x| * 10^p) holds the integer part and the truncated digits together.
  mpz_class scaled = magnitude.get_num() * scale / magnitude.get_den();
  mpz_class whole = scaled / scale;
  mpz_class frac = scaled % scale;

  std::string digits = frac.get_str();
  std::string out;
  if (x.sign() < 0) out += '-';
  out += whole.get_str();
  out += '.';
  out.append(static_cast<std::size_t>(precision) - digits.size(), '0');
  out += digits;
  return out;
}

}  // namespace thermflow
