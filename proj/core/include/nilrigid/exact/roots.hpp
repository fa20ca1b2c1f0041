#pragma once

#include <vector>

#include "nilrigid/exact/polynomial.hpp"
#include "nilrigid/exact/real.hpp"

namespace nilrigid::exact {

/// Exact Gaussian rational re + i*im.
struct GaussianRational {
  Rational re, im;

  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
  GaussianRational operator*(const GaussianRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussianRational operator/(const GaussianRational& o) const;
  Rational norm() const { return re * re + im * im; }
  GaussianRational conj() const { return {re, -im}; }
};

/// An algebraic number: its minimal polynomial together with a square
/// [re - r, re + r] x [im - r, im + r] containing exactly one of its roots.
struct AlgebraicEnclosure {
  IntPolynomial minimal_polynomial;
  Rational center_re, center_im;
  Rational radius;
  long precision_bits = kDefaultPrecision;
  /// Certified real: the box is symmetric about the real axis and isolating.
  bool real = false;

  Rational box_width() const { return 2 * radius; }
  ComplexInterval box(long prec) const;
  Interval abs_interval(long prec) const;
  double approx_re() const { return center_re.get_d(); }
  double approx_im() const { return center_im.get_d(); }
};

/// Isolates every complex root of a squarefree integer polynomial. Roots are
/// approximated by Aberth iteration and then certified with exact Gershgorin
/// disks of the Weierstrass matrix; boxes are pairwise disjoint, real roots
/// are certified as such, and box width is <= 2^(-bits/2). Ordered by
/// (real part, imaginary part) of the centers.
std::vector<AlgebraicEnclosure> isolate_roots(const IntPolynomial& f, long bits = kDefaultPrecision);

/// Root enclosures of an irreducible polynomial (checked).
std::vector<AlgebraicEnclosure> algebraic_roots(const IntPolynomial& minpoly, long bits = kDefaultPrecision);

/// Re-isolates at higher precision and returns the enclosure of the same root.
AlgebraicEnclosure refine(const AlgebraicEnclosure& e, long bits);

/// Exact: true iff the minimal polynomial divides x^k - 1 for some k with phi(k) <= degree.
bool is_root_of_unity(const AlgebraicEnclosure& e);

/// Exact: true iff the enclosed root has absolute value 1.
bool on_unit_circle(const AlgebraicEnclosure& e);

/// Number of roots of p on the unit circle, counted exactly (p nonzero, any factorization).
int unit_circle_root_count(const IntPolynomial& p);

/// Interval of width <= 2^(-bits/4) containing log|root|.
Interval certified_abs_log(const AlgebraicEnclosure& e, long bits = kDefaultPrecision);

/// Enclosure of arg(root) in (-pi, pi]; throws IndeterminateError for boxes meeting the cut.
Interval certified_arg(const AlgebraicEnclosure& e, long bits = kDefaultPrecision);

}  // namespace nilrigid::exact
