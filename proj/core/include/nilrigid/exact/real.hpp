#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "nilrigid/exact/rational.hpp"

namespace nilrigid::exact {

inline constexpr long kDefaultPrecision = 128;
inline constexpr long kMaxPrecision = 1024;

/// RAII wrapper around an MPFR number; arithmetic rounds to nearest at the
/// larger operand precision.
class BigFloat {
 public:
  explicit BigFloat(long prec = kDefaultPrecision);
  BigFloat(double v, long prec);
  BigFloat(const Rational& q, long prec, mpfr_rnd_t rnd = MPFR_RNDN);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Exact rational value of this binary float.
  Rational to_rational() const;
  std::string to_string(int digits = 20) const;

  BigFloat operator+(const BigFloat& o) const;
  BigFloat operator-(const BigFloat& o) const;
  BigFloat operator*(const BigFloat& o) const;
  BigFloat operator/(const BigFloat& o) const;
  BigFloat operator-() const;
  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);

  bool operator<(const BigFloat& o) const { return mpfr_less_p(v_, o.v_) != 0; }
  bool operator>(const BigFloat& o) const { return mpfr_greater_p(v_, o.v_) != 0; }
  bool operator<=(const BigFloat& o) const { return mpfr_lessequal_p(v_, o.v_) != 0; }
  bool operator>=(const BigFloat& o) const { return mpfr_greaterequal_p(v_, o.v_) != 0; }
  bool operator==(const BigFloat& o) const { return mpfr_equal_p(v_, o.v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  static BigFloat pi(long prec);

 private:
  mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat floor(const BigFloat& x);
/// Representative of x modulo 1 in [-1/2, 1/2).
BigFloat centered_frac(const BigFloat& x);

/// Closed real interval with outward-rounded MPFR endpoints.
class Interval {
 public:
  explicit Interval(long prec = kDefaultPrecision);
  Interval(const Rational& q, long prec);
  Interval(const Rational& lo, const Rational& hi, long prec);
  Interval(BigFloat lo, BigFloat hi);
  static Interval point(double v, long prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  long precision() const { return lo_.precision(); }

  BigFloat mid() const;
  BigFloat width() const;
  double mid_double() const { return mid().to_double(); }

  bool contains(const Rational& q) const;
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool positive() const { return lo_.sign() > 0; }
  bool negative() const { return hi_.sign() < 0; }
  /// Certified strict comparisons.
  bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }
  bool overlaps(const Interval& o) const { return !(hi_ < o.lo_) && !(o.hi_ < lo_); }
  /// Hull.
  Interval join(const Interval& o) const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;
  Interval operator-() const;
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  std::string to_string(int digits = 17) const;

 private:
  BigFloat lo_, hi_;
};

Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval abs(const Interval& x);
/// Enclosure of pi.
Interval pi_interval(long prec);
/// Enclosure of atan2(y, x) for x, y boxes not containing the origin.
Interval atan2(const Interval& y, const Interval& x);

/// Rectangular complex interval.
struct ComplexInterval {
  Interval re, im;

  ComplexInterval(long prec = kDefaultPrecision) : re(prec), im(prec) {}
  ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  ComplexInterval operator+(const ComplexInterval& o) const { return {re + o.re, im + o.im}; }
  ComplexInterval operator-(const ComplexInterval& o) const { return {re - o.re, im - o.im}; }
  ComplexInterval operator*(const ComplexInterval& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ComplexInterval operator*(const Interval& s) const { return {re * s, im * s}; }
  /// Enclosure of |z|^2.
  Interval norm() const { return sqr(re) + sqr(im); }
  Interval abs() const { return sqrt(norm()); }
  /// Widens both components by [-r, r].
  ComplexInterval inflate(const BigFloat& r) const;
};

}  // namespace nilrigid::exact
