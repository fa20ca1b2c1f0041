#pragma once

#include <array>

#include "nilrigid/exact/real.hpp"
#include "nilrigid/heisenberg/group.hpp"
#include "nilrigid/heisenberg/katok.hpp"

namespace nilrigid::heisenberg {

using exact::ComplexInterval;

using Vec6 = std::array<BigFloat, 6>;

/// The A- and B-invariant plane W of the unit-circle eigenvalues. With v the
/// eigenvector of A for the eigenvalue zeta_A in the upper half plane, scaled
/// and rotated so that re = Re v, im = Im v satisfy |re|^2 + |im|^2 = 2,
/// re . im = 0 and |re| >= |im|. In the basis (re, -im) both matrices act by
/// rotations of angles arg zeta_A, arg zeta_B.
struct InvariantPlane {
  long precision_bits = 0;
  std::array<Interval, 6> re, im;
  ComplexInterval zeta_a, zeta_b;
  Interval angle_a, angle_b;
  /// Neither unit-circle eigenvalue is a root of unity (decided exactly).
  bool angles_irrational = false;
  /// max over theta of |x_k(theta)| on the circle of radius 1.
  std::array<Interval, 6> amplitude;

  Vec6 re_mid(long prec) const;
  Vec6 im_mid(long prec) const;
};

InvariantPlane invariant_plane(const KatokPair& pair, long bits = 256);

struct CircleRadius {
  Rational rho;      // returned radius (half the maximal one)
  Rational rho_max;  // largest radius with denominator <= max_denominator
  Interval max_amplitude;
  long max_denominator = 64;
};

/// Largest rho with denominator <= 64 such that rho * amplitude_k < 1/2 for
/// every coordinate, certified by interval arithmetic; then halved.
CircleRadius circle_radius(const InvariantPlane& plane, long max_denominator = 64);

/// The invariant circle S_0 of radius rho in W.
struct Circle {
  InvariantPlane plane;
  Rational rho;
};

Circle make_circle(const KatokPair& pair, long bits = 256);

/// rho (cos t re - sin t im).
Vec6 circle_point(const Circle& c, const BigFloat& theta);

/// Distance from x to S_0: the component of x off W combined with the radial
/// error in W.
BigFloat circle_residual(const Circle& c, const Vec6& x);

/// psi(x, y) = (x, y, x.y) for x on S_0 (within tol) and y in [-1/2, 1/2)^6.
HeisPoint section_map(const Circle& c, const Vec6& x, const Vec6& y, double tol = 1e-12);

/// Membership of a point of X in psi(S x T^6): reduce to the fundamental
/// domain, then check x on S_0 and z = x.y modulo 1, within tol.
bool on_section(const Circle& c, const HeisPoint& p, double tol = 1e-12);

}  // namespace nilrigid::heisenberg
