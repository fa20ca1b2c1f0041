#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nilrigid/exact/matrix.hpp"
#include "nilrigid/exact/rational.hpp"

namespace nilrigid::exact {

/// Dense univariate polynomial, coefficients stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const T& a) { return Polynomial(std::vector<T>{a}); }
  static Polynomial monomial(const T& a, std::size_t k) {
    std::vector<T> c(k + 1);
    c[k] = a;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  /// Coefficient of x^k (zero beyond the degree).
  T operator[](std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
  const T& leading() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  template <class U>
  U operator()(const U& v) const {
    U acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * v + U(c_[k]);
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = (*this)[k] + o[k];
    return Polynomial(std::move(r));
  }
  Polynomial operator-(const Polynomial& o) const {
    std::vector<T> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = (*this)[k] - o[k];
    return Polynomial(std::move(r));
  }
  Polynomial operator-() const {
    std::vector<T> r = c_;
    for (auto& a : r) a = -a;
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<T> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Polynomial(std::move(r));
  }
  Polynomial operator*(const T& s) const {
    std::vector<T> r = c_;
    for (auto& a : r) a *= s;
    return Polynomial(std::move(r));
  }
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }
  bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(r));
  }

  /// p(x) -> x^deg p(1/x).
  Polynomial reversed() const {
    std::vector<T> r(c_.rbegin(), c_.rend());
    return Polynomial(std::move(r));
  }

  /// p(x) -> p(-x).
  Polynomial negated_argument() const {
    std::vector<T> r = c_;
    for (std::size_t k = 1; k < r.size(); k += 2) r[k] = -r[k];
    return Polynomial(std::move(r));
  }

  template <class U>
  Polynomial<U> cast() const {
    std::vector<U> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.emplace_back(a);
    return Polynomial<U>(std::move(r));
  }

  std::string to_string(const char* var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

template <class T>
std::string Polynomial<T>::to_string(const char* var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (c_[k] == 0) continue;
    T a = c_[k];
    bool neg = a < 0;
    if (neg) a = -a;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (k == 0 || a != 1) out += a.get_str();
    if (k > 0) {
      if (a != 1) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

/// Euclidean division over Q: a = q*b + r, deg r < deg b.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial operator%(const RatPolynomial& a, const RatPolynomial& b);
RatPolynomial operator/(const RatPolynomial& a, const RatPolynomial& b);

/// Monic gcd over Q (zero if both are zero).
RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b);
/// Returns (g, s, t) with s*a + t*b = g monic gcd.
struct ExtendedGcd {
  RatPolynomial g, s, t;
};
ExtendedGcd extended_gcd(const RatPolynomial& a, const RatPolynomial& b);

RatPolynomial make_monic(const RatPolynomial& p);

Integer content(const IntPolynomial& p);
/// Primitive part with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& p);
/// Clears denominators and returns the primitive integer polynomial with positive leading coefficient.
IntPolynomial to_primitive(const RatPolynomial& p);
RatPolynomial to_rational(const IntPolynomial& p);

/// Exact division over Z; throws PreconditionError if b does not divide a.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
/// True iff b divides a over Q.
bool divides(const IntPolynomial& b, const IntPolynomial& a);

/// Squarefree part over Q, returned primitive.
IntPolynomial squarefree_part(const IntPolynomial& p);

/// p(q(x)).
RatPolynomial compose(const RatPolynomial& p, const RatPolynomial& q);

/// Reciprocal in the sense p(x) = +-x^deg p(1/x).
bool is_reciprocal(const IntPolynomial& p);

/// For a reciprocal polynomial of even degree 2m returns h of degree m with
/// p(x) = x^m h(x + 1/x). Throws PreconditionError otherwise.
IntPolynomial trace_polynomial(const IntPolynomial& p);

/// Characteristic polynomial det(xI - M) over Q (monic).
RatPolynomial charpoly_rational(const RationalMatrix& m);
/// det(xI - M) with denominators cleared; monic integer for integer M.
IntPolynomial charpoly(const RationalMatrix& m);
/// p(M) by Horner.
RationalMatrix evaluate(const RatPolynomial& p, const RationalMatrix& m);
/// Companion matrix of a monic polynomial (last column holds -coefficients).
RationalMatrix companion_matrix(const IntPolynomial& p);

/// Sturm sequence for counting distinct real roots.
class SturmSequence {
 public:
  explicit SturmSequence(const IntPolynomial& p);
  /// Number of distinct real roots in the half-open interval (a, b].
  int count(const Rational& a, const Rational& b) const;
  /// Number of distinct real roots in (a, +inf).
  int count_above(const Rational& a) const;
  int count_below_or_at(const Rational& b) const;
  int count_all() const;

 private:
  int variations_at(const Rational& x) const;
  int variations_at_infinity(int sign) const;
  std::vector<RatPolynomial> seq_;
};

/// Cauchy bound: every complex root has absolute value < the returned value.
Rational root_bound(const IntPolynomial& p);

}  // namespace nilrigid::exact
