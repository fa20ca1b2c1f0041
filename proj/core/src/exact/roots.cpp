#include "nilrigid/exact/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "nilrigid/exact/factor.hpp"

namespace nilrigid::exact {

GaussianRational GaussianRational::operator/(const GaussianRational& o) const {
  Rational n = o.norm();
  if (n == 0) throw PreconditionError("Gaussian rational division by zero");
  GaussianRational t = *this * o.conj();
  return {t.re / n, t.im / n};
}

ComplexInterval AlgebraicEnclosure::box(long prec) const {
  return {Interval(center_re - radius, center_re + radius, prec),
          Interval(center_im - radius, center_im + radius, prec)};
}

Interval AlgebraicEnclosure::abs_interval(long prec) const { return box(prec).abs(); }

namespace {

using cd = std::complex<double>;

struct CF {
  BigFloat re, im;
};

CF cmul(const CF& a, const CF& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
CF cadd(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }
CF csub(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
CF cdiv(const CF& a, const CF& b) {
  BigFloat n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
BigFloat cabs2(const CF& a) { return a.re * a.re + a.im * a.im; }

std::vector<cd> aberth_double(const IntPolynomial& f) {
  const int n = f.degree();
  std::vector<double> c(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) c[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(k)].get_d();
  auto eval = [&](cd z, cd& p, cd& dp) {
    p = c[static_cast<std::size_t>(n)];
    dp = 0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[static_cast<std::size_t>(k)];
    }
  };
  double rho = std::pow(std::abs(c[0] / c[static_cast<std::size_t>(n)]), 1.0 / n);
  if (!(rho > 0) || !std::isfinite(rho)) rho = 1;
  std::vector<cd> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(rho, 2 * M_PI * k / n + 0.4);
  for (int it = 0; it < 2000; ++it) {
    double worst = 0;
    for (int i = 0; i < n; ++i) {
      cd& zi = z[static_cast<std::size_t>(i)];
      cd p, dp;
      eval(zi, p, dp);
      if (p == cd(0)) continue;
      cd ratio = p / dp;
      cd s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
      cd w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      zi -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(zi)));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

void aberth_mpfr(const IntPolynomial& f, std::vector<CF>& z, long wp) {
  const int n = f.degree();
  std::vector<BigFloat> c;
  for (int k = 0; k <= n; ++k) c.emplace_back(Rational(f[static_cast<std::size_t>(k)]), wp);
  for (auto& zi : z) {
    mpfr_prec_round(zi.re.get(), wp, MPFR_RNDN);
    mpfr_prec_round(zi.im.get(), wp, MPFR_RNDN);
  }
  BigFloat tol(1.0, wp);
  mpfr_mul_2si(tol.get(), tol.get(), -2 * (wp - 12), MPFR_RNDN);
  const BigFloat one(1.0, wp), zero(0.0, wp);
  for (int it = 0; it < 200; ++it) {
    BigFloat worst(0.0, wp);
    for (int i = 0; i < n; ++i) {
      CF& zi = z[static_cast<std::size_t>(i)];
      CF p{c[static_cast<std::size_t>(n)], zero}, dp{zero, zero};
      for (int k = n - 1; k >= 0; --k) {
        dp = cadd(cmul(dp, zi), p);
        p = cadd(cmul(p, zi), CF{c[static_cast<std::size_t>(k)], zero});
      }
      if (p.re.is_zero() && p.im.is_zero()) continue;
      if (dp.re.is_zero() && dp.im.is_zero()) continue;
      CF ratio = cdiv(p, dp);
      CF s{zero, zero};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        CF d = csub(zi, z[static_cast<std::size_t>(j)]);
        if (d.re.is_zero() && d.im.is_zero()) continue;
        s = cadd(s, cdiv(CF{one, zero}, d));
      }
      CF den = csub(CF{one, zero}, cmul(ratio, s));
      CF w = (den.re.is_zero() && den.im.is_zero()) ? ratio : cdiv(ratio, den);
      zi = csub(zi, w);
      BigFloat scale = cabs2(zi);
      if (scale < one) scale = one;
      BigFloat rel = cabs2(w) / scale;
      if (rel > worst) worst = rel;
    }
    if (worst < tol) break;
  }
}

GaussianRational eval_exact(const IntPolynomial& f, const GaussianRational& z) {
  GaussianRational acc{0, 0};
  for (std::size_t k = f.coeffs().size(); k-- > 0;) acc = acc * z + GaussianRational{Rational(f.coeffs()[k]), 0};
  return acc;
}

// Upper bound for sqrt(q), q >= 0 rational, as a dyadic rational.
Rational sqrt_upper(const Rational& q) {
  if (q == 0) return 0;
  BigFloat b(q, 64, MPFR_RNDU);
  mpfr_sqrt(b.get(), b.get(), MPFR_RNDU);
  return b.to_rational();
}

// Tries to certify; returns empty vector on failure.
std::vector<AlgebraicEnclosure> certify(const IntPolynomial& f, const std::vector<GaussianRational>& z,
                                        long bits, int real_count) {
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (z[i].re == z[j].re && z[i].im == z[j].im) return {};
  const GaussianRational lc{Rational(f.leading()), 0};
  std::vector<Rational> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    GaussianRational den = lc;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) den = den * (z[i] - z[j]);
    GaussianRational w = eval_exact(f, z[i]) / den;
    r[i] = sqrt_upper(w.norm()) * static_cast<long>(n);
  }
  Rational limit = 1;
  mpq_div_2exp(limit.get_mpq_t(), limit.get_mpq_t(), static_cast<mp_bitcnt_t>(bits / 2));
  for (std::size_t i = 0; i < n; ++i)
    if (2 * r[i] > limit) return {};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational s = r[i] + r[j];
      if (abs(z[i].re - z[j].re) <= s && abs(z[i].im - z[j].im) <= s) return {};
    }
  int reals = 0;
  std::vector<AlgebraicEnclosure> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i].minimal_polynomial = f;
    out[i].center_re = z[i].re;
    out[i].center_im = z[i].im;
    out[i].radius = r[i];
    out[i].precision_bits = bits;
    out[i].real = z[i].im == 0;
    reals += out[i].real ? 1 : 0;
  }
  if (reals != real_count) return {};
  std::sort(out.begin(), out.end(), [](const AlgebraicEnclosure& a, const AlgebraicEnclosure& b) {
    if (a.center_re != b.center_re) return a.center_re < b.center_re;
    return a.center_im < b.center_im;
  });
  return out;
}

std::vector<GaussianRational> symmetrize(const std::vector<CF>& z, long wp) {
  const std::size_t n = z.size();
  std::vector<GaussianRational> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = {z[i].re.to_rational(), z[i].im.to_rational()};
  Rational tol = 1;
  mpq_div_2exp(tol.get_mpq_t(), tol.get_mpq_t(), static_cast<mp_bitcnt_t>(wp / 2));
  std::vector<bool> done(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (abs(g[i].im) <= tol * std::max(Rational(1), Rational(abs(g[i].re)))) {
      g[i].im = 0;
      done[i] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (done[i] || g[i].im < 0) continue;
    std::size_t best = n;
    Rational bestd;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j] || j == i || g[j].im > 0) continue;
      Rational d = (g[i].re - g[j].re) * (g[i].re - g[j].re) + (g[i].im + g[j].im) * (g[i].im + g[j].im);
      if (best == n || d < bestd) {
        best = j;
        bestd = d;
      }
    }
    if (best == n) continue;
    g[best] = g[i].conj();
    done[i] = done[best] = true;
  }
  return g;
}

}  // namespace

std::vector<AlgebraicEnclosure> isolate_roots(const IntPolynomial& f_in, long bits) {
  if (f_in.is_zero()) throw PreconditionError("isolate_roots: zero polynomial");
  if (bits < 8) throw PreconditionError("isolate_roots: precision too small");
  IntPolynomial f = primitive_part(f_in);
  if (f.degree() <= 0) return {};
  if (squarefree_part(f).degree() != f.degree()) throw PreconditionError("isolate_roots: polynomial not squarefree");
  if (f.degree() == 1) {
    AlgebraicEnclosure e;
    e.minimal_polynomial = f;
    e.center_re = Rational(-f[0], f[1]);
    e.center_re.canonicalize();
    e.center_im = 0;
    e.radius = 0;
    e.precision_bits = bits;
    e.real = true;
    return {e};
  }
  const int real_count = SturmSequence(f).count_all();
  std::vector<cd> z0 = aberth_double(f);
  std::vector<CF> z;
  long wp = std::max<long>(bits, 64) + 32;
  for (const auto& c : z0) z.push_back({BigFloat(c.real(), wp), BigFloat(c.imag(), wp)});
  for (int attempt = 0; attempt < 8; ++attempt) {
    aberth_mpfr(f, z, wp);
    auto out = certify(f, symmetrize(z, wp), bits, real_count);
    if (!out.empty()) return out;
    wp *= 2;
  }
  throw ExhaustedError("isolate_roots: certification failed at maximal working precision");
}

std::vector<AlgebraicEnclosure> algebraic_roots(const IntPolynomial& minpoly, long bits) {
  if (!is_irreducible(minpoly)) throw PreconditionError("algebraic_roots: polynomial is not irreducible");
  return isolate_roots(minpoly, bits);
}

namespace {

bool box_contains_box(const AlgebraicEnclosure& outer, const AlgebraicEnclosure& inner) {
  return inner.center_re - inner.radius >= outer.center_re - outer.radius &&
         inner.center_re + inner.radius <= outer.center_re + outer.radius &&
         inner.center_im - inner.radius >= outer.center_im - outer.radius &&
         inner.center_im + inner.radius <= outer.center_im + outer.radius;
}

bool boxes_meet(const AlgebraicEnclosure& a, const AlgebraicEnclosure& b) {
  Rational s = a.radius + b.radius;
  return abs(a.center_re - b.center_re) <= s && abs(a.center_im - b.center_im) <= s;
}

}  // namespace

AlgebraicEnclosure refine(const AlgebraicEnclosure& e, long bits) {
  if (e.radius == 0) {
    AlgebraicEnclosure r = e;
    r.precision_bits = std::max(bits, e.precision_bits);
    return r;
  }
  for (long b = std::max(bits, e.precision_bits); b <= 16 * std::max(bits, e.precision_bits); b *= 2) {
    auto roots = isolate_roots(e.minimal_polynomial, b);
    const AlgebraicEnclosure* hit = nullptr;
    int meeting = 0;
    for (const auto& r : roots) {
      if (box_contains_box(e, r)) return r;
      if (boxes_meet(e, r)) {
        ++meeting;
        hit = &r;
      }
    }
    if (meeting == 1) return *hit;
  }
  throw ExhaustedError("refine: could not match the enclosure at higher precision");
}

bool is_root_of_unity(const AlgebraicEnclosure& e) {
  const IntPolynomial& f = e.minimal_polynomial;
  if (f.degree() < 1) return false;
  const RatPolynomial fr = to_rational(f);
  const RatPolynomial x = RatPolynomial::x();
  RatPolynomial xk = RatPolynomial::constant(1);
  unsigned long k = 0;
  for (unsigned long target : indices_with_phi_at_most(static_cast<unsigned long>(f.degree()))) {
    while (k < target) {
      xk = (xk * x) % fr;
      ++k;
    }
    if ((xk - RatPolynomial::constant(1)) % fr == RatPolynomial()) return true;
  }
  return false;
}

namespace {

// Roots on the unit circle of an irreducible polynomial, counted exactly.
int circle_count_irreducible(const IntPolynomial& g) {
  if (g.degree() == 1) return (g[0] == g[1] || g[0] == -g[1]) ? 1 : 0;
  if (g.degree() % 2 != 0 || g.reversed() != g) return 0;
  IntPolynomial h = trace_polynomial(g);
  return 2 * SturmSequence(h).count(Rational(-2), Rational(2));
}

}  // namespace

int unit_circle_root_count(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("unit_circle_root_count: zero polynomial");
  int total = 0;
  for (const auto& t : factor_rational(p).terms) total += t.multiplicity * circle_count_irreducible(t.factor);
  return total;
}

bool on_unit_circle(const AlgebraicEnclosure& e) {
  const IntPolynomial& f = e.minimal_polynomial;
  const int k = circle_count_irreducible(f);
  if (k == 0) return false;
  if (k == f.degree()) return true;
  for (long bits = std::max<long>(e.precision_bits, 64); bits <= kMaxPrecision; bits *= 2) {
    auto roots = isolate_roots(f, bits);
    const Rational one(1);
    int containing = 0;
    for (const auto& r : roots)
      if (r.abs_interval(bits + 32).contains(one)) ++containing;
    if (containing != k) continue;
    AlgebraicEnclosure me = refine(e, bits);
    return me.abs_interval(bits + 32).contains(one);
  }
  throw IndeterminateError("on_unit_circle: could not separate roots from the circle");
}

Interval certified_abs_log(const AlgebraicEnclosure& e, long bits) {
  if (bits < 32) throw PreconditionError("certified_abs_log: bits must be >= 32");
  if (e.minimal_polynomial.degree() == 1 && e.minimal_polynomial[0] == 0)
    throw PreconditionError("certified_abs_log: root is zero");
  if (on_unit_circle(e)) return Interval(Rational(0), bits);
  BigFloat target(1.0, bits);
  mpfr_mul_2si(target.get(), target.get(), -(bits / 4), MPFR_RNDN);
  AlgebraicEnclosure cur = e;
  for (long p = std::max(bits, e.precision_bits); p <= 16 * std::max(bits, e.precision_bits); p *= 2) {
    if (p > cur.precision_bits) cur = refine(cur, p);
    Interval a = cur.abs_interval(p + 32);
    if (a.lo().sign() > 0) {
      Interval l = log(a);
      if (l.width() <= target) return l;
    }
  }
  throw ExhaustedError("certified_abs_log: refinement did not reach the target width");
}

Interval certified_arg(const AlgebraicEnclosure& e, long bits) {
  AlgebraicEnclosure cur = e.precision_bits >= bits ? e : refine(e, bits);
  ComplexInterval b = cur.box(bits + 32);
  return atan2(b.im, b.re);
}

}  // namespace nilrigid::exact
