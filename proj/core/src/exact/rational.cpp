#include "nilrigid/exact/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace nilrigid::exact {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) throw std::invalid_argument("malformed integer literal");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') {
      throw std::invalid_argument("malformed integer literal '" + std::string(s) + "'");
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer centered_round(const Rational& q) { return floor(q + Rational(1, 2)); }

Rational centered_frac(const Rational& q) { return q - Rational(centered_round(q)); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational simplest_between(const Rational& lo_in, const Rational& hi_in) {
  if (lo_in > hi_in) throw PreconditionError("simplest_between: empty interval");
  if (lo_in <= 0 && hi_in >= 0) return Rational(0);
  if (hi_in < 0) return -simplest_between(-hi_in, -lo_in);
  // 0 < lo <= hi: continued-fraction walk.
  Rational lo = lo_in, hi = hi_in;
  Integer fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(fl + 1) <= hi) return Rational(fl + 1);
  // Both in (fl, fl+1): recurse on reciprocals of fractional parts.
  Rational inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  Rational r = Rational(fl) + 1 / inner;
  r.canonicalize();
  return r;
}

}  // namespace nilrigid::exact
