#include "nilrigid/heisenberg/plane.hpp"

#include <memory>

#include "nilrigid/exact/number_field.hpp"
#include "nilrigid/exact/roots.hpp"

namespace nilrigid::heisenberg {

using namespace exact;

namespace {

constexpr std::size_t kN = 6;

BigFloat mid_at(const Interval& i, long prec) {
  BigFloat m = i.mid();
  BigFloat r(prec);
  mpfr_set(r.get(), m.get(), MPFR_RNDN);
  return r;
}

BigFloat dot(const Vec6& a, const Vec6& b) {
  BigFloat s(a[0].precision()), t(a[0].precision());
  for (std::size_t i = 0; i < kN; ++i) {
    mpfr_mul(t.get(), a[i].get(), b[i].get(), MPFR_RNDN);
    mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
  }
  return s;
}

}  // namespace

Vec6 InvariantPlane::re_mid(long prec) const {
  Vec6 v{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)};
  for (std::size_t i = 0; i < kN; ++i) v[i] = mid_at(re[i], prec);
  return v;
}

Vec6 InvariantPlane::im_mid(long prec) const {
  Vec6 v{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)};
  for (std::size_t i = 0; i < kN; ++i) v[i] = mid_at(im[i], prec);
  return v;
}

InvariantPlane invariant_plane(const KatokPair& pair, long bits) {
  if (!pair.certificate.irreducible_a) throw PreconditionError("invariant_plane: pair is not verified");
  const long prec = bits + 64;
  auto K = std::make_shared<const NumberField>(pair.certificate.a.charpoly);
  KMatrix shifted = KMatrix::from_rational(K, pair.A) - [&] {
    KMatrix t = KMatrix::identity(K, kN);
    for (std::size_t i = 0; i < kN; ++i) t(i, i) = K->generator();
    return t;
  }();
  KMatrix ker = shifted.kernel();
  if (ker.cols() != 1) throw PreconditionError("invariant_plane: eigenspace of A is not a line");

  const AlgebraicEnclosure* zeta = nullptr;
  auto roots = isolate_roots(pair.certificate.a.charpoly, prec);
  for (const auto& r : roots)
    if (!r.real && r.center_im > 0 && on_unit_circle(r)) zeta = &r;
  if (!zeta) throw PreconditionError("invariant_plane: no unit-circle eigenvalue in the upper half plane");
  ComplexInterval z = zeta->box(prec);

  std::array<ComplexInterval, kN> v;
  std::size_t pivot = kN;
  for (std::size_t i = 0; i < kN; ++i) {
    v[i] = K->embed(ker(i, 0), z);
    if (pivot == kN && !K->is_zero(ker(i, 0))) pivot = i;
  }
  // Eigenvalue of B on the same line: (B v)_k / v_k in K.
  NumberField::Elem bv = K->zero();
  for (std::size_t j = 0; j < kN; ++j) bv = K->add(bv, K->scale(ker(j, 0), pair.B(pivot, j)));
  NumberField::Elem mu_b = K->mul(bv, K->inv(ker(pivot, 0)));

  InvariantPlane pl;
  pl.precision_bits = bits;
  pl.zeta_a = z;
  pl.zeta_b = K->embed(mu_b, z);
  pl.angle_a = atan2(pl.zeta_a.im, pl.zeta_a.re);
  pl.angle_b = atan2(pl.zeta_b.im, pl.zeta_b.re);
  pl.angles_irrational = !pair.certificate.a.nonreal_root_of_unity && !pair.certificate.b.nonreal_root_of_unity;

  Interval uu(Rational(0), prec), ww(Rational(0), prec), uw(Rational(0), prec);
  for (std::size_t i = 0; i < kN; ++i) {
    uu += sqr(v[i].re);
    ww += sqr(v[i].im);
    uw += v[i].re * v[i].im;
  }
  // e^{i psi} v with cos 2psi = p/r, sin 2psi = -q/r makes Re and Im
  // orthogonal with |Re| >= |Im|.
  Interval p = uu - ww, q = uw + uw;
  Interval c(Rational(1), prec), s(Rational(0), prec);
  if (!q.contains_zero()) {
    Interval r = sqrt(sqr(p) + sqr(q));
    Interval c2 = p / r;
    Interval one(Rational(1), prec), two(Rational(2), prec);
    c = sqrt((one + c2) / two);
    s = sqrt((one - c2) / two);
    if (q.positive()) s = -s;
  }
  Interval scale = sqrt(Interval(Rational(2), prec) / (uu + ww));
  for (std::size_t i = 0; i < kN; ++i) {
    pl.re[i] = (c * v[i].re - s * v[i].im) * scale;
    pl.im[i] = (s * v[i].re + c * v[i].im) * scale;
    pl.amplitude[i] = sqrt(sqr(pl.re[i]) + sqr(pl.im[i]));
  }
  return pl;
}

CircleRadius circle_radius(const InvariantPlane& plane, long max_denominator) {
  if (max_denominator < 1) throw PreconditionError("circle_radius: max_denominator must be positive");
  CircleRadius out;
  out.max_denominator = max_denominator;
  out.max_amplitude = plane.amplitude[0];
  for (const auto& a : plane.amplitude)
    if (a.hi() > out.max_amplitude.hi()) out.max_amplitude = a;
  // Certified lower bound for 1 / (2 max_amplitude).
  const Rational bound = (Interval(Rational(1), plane.precision_bits) /
                          (out.max_amplitude + out.max_amplitude)).lo().to_rational();
  Rational best(0);
  for (long q = 1; q <= max_denominator; ++q) {
    Rational qq(q);
    Integer k = floor(bound * qq);
    Rational cand = Rational(k) / qq;
    if (cand >= bound) cand = Rational(k - 1) / qq;
    cand.canonicalize();
    if (cand > best) best = cand;
  }
  if (best <= 0) throw PreconditionError("circle_radius: amplitude too large for the denominator bound");
  out.rho_max = best;
  out.rho = best / 2;
  return out;
}

Circle make_circle(const KatokPair& pair, long bits) {
  Circle c{invariant_plane(pair, bits), Rational(0)};
  c.rho = circle_radius(c.plane).rho;
  return c;
}

Vec6 circle_point(const Circle& c, const BigFloat& theta) {
  const long prec = theta.precision();
  Vec6 re = c.plane.re_mid(prec), im = c.plane.im_mid(prec);
  BigFloat rho(c.rho, prec);
  BigFloat ct = cos(theta) * rho, st = sin(theta) * rho;
  Vec6 x = re;
  BigFloat t(prec);
  for (std::size_t i = 0; i < kN; ++i) {
    mpfr_mul(x[i].get(), re[i].get(), ct.get(), MPFR_RNDN);
    mpfr_mul(t.get(), im[i].get(), st.get(), MPFR_RNDN);
    mpfr_sub(x[i].get(), x[i].get(), t.get(), MPFR_RNDN);
  }
  return x;
}

BigFloat circle_residual(const Circle& c, const Vec6& x) {
  const long prec = x[0].precision();
  Vec6 e1 = c.plane.re_mid(prec), e2 = c.plane.im_mid(prec);
  for (auto& e : e2) e = -e;
  // Least squares x ~ s e1 + t e2 through the 2x2 Gram system.
  BigFloat g11 = dot(e1, e1), g12 = dot(e1, e2), g22 = dot(e2, e2);
  BigFloat b1 = dot(e1, x), b2 = dot(e2, x);
  BigFloat det = g11 * g22 - g12 * g12;
  BigFloat s = (b1 * g22 - b2 * g12) / det;
  BigFloat t = (g11 * b2 - g12 * b1) / det;
  BigFloat off(prec);
  for (std::size_t i = 0; i < kN; ++i) {
    BigFloat r = x[i] - s * e1[i] - t * e2[i];
    off += r * r;
  }
  BigFloat radial = sqrt(s * s + t * t) - BigFloat(c.rho, prec);
  return sqrt(off + radial * radial);
}

HeisPoint section_map(const Circle& c, const Vec6& x, const Vec6& y, double tol) {
  const long prec = x[0].precision();
  if (c.rho <= 0) throw PreconditionError("section_map: circle has radius 0");
  if (circle_residual(c, x).to_double() > tol) throw PreconditionError("section_map: x is not on the circle");
  BigFloat half(0.5, prec);
  for (const auto& yi : y)
    if (yi < -half || yi >= half) throw PreconditionError("section_map: y outside [-1/2, 1/2)^6");
  HeisPoint p(prec);
  p.x = x;
  p.y = y;
  p.z = dot(x, y);
  return p;
}

bool on_section(const Circle& c, const HeisPoint& p, double tol) {
  HeisPoint r = heis_reduce(p);
  if (circle_residual(c, r.x).to_double() > tol) return false;
  BigFloat off = abs(centered_frac(r.z - dot(r.x, r.y)));
  return off.to_double() <= tol;
}

}  // namespace nilrigid::heisenberg
