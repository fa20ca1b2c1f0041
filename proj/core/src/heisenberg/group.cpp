#include "nilrigid/heisenberg/group.hpp"

namespace nilrigid::heisenberg {

namespace {

constexpr std::size_t kN = 6;
constexpr std::size_t kZ = 12;

void require_13(const std::vector<Rational>& p, const char* what) {
  if (p.size() != 13) throw PreconditionError(std::string(what) + ": expected 13 coordinates");
}

}  // namespace

std::vector<Rational> heis_multiply(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  require_13(p, "heis_multiply");
  require_13(q, "heis_multiply");
  std::vector<Rational> r(13);
  for (std::size_t i = 0; i < kZ; ++i) r[i] = p[i] + q[i];
  Rational z = p[kZ] + q[kZ];
  for (std::size_t i = 0; i < kN; ++i) z += p[i] * q[kN + i] - q[i] * p[kN + i];
  r[kZ] = z;
  return r;
}

HeisReduction heis_reduce(const std::vector<Rational>& p) {
  require_13(p, "heis_reduce");
  HeisReduction r{std::vector<Rational>(13), std::vector<Rational>(13)};
  for (std::size_t i = 0; i < kZ; ++i) {
    r.fractional[i] = exact::centered_frac(p[i]);
    r.integer[i] = p[i] - r.fractional[i];
  }
  Rational w = p[kZ];
  for (std::size_t i = 0; i < kN; ++i) w += p[i] * r.fractional[kN + i] - r.fractional[i] * p[kN + i];
  r.fractional[kZ] = exact::centered_frac(w);
  r.integer[kZ] = w - r.fractional[kZ];
  return r;
}

HeisPoint::HeisPoint(long prec)
    : x{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)},
      y{BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)},
      z(prec) {}

HeisPoint heis_reduce(const HeisPoint& p) {
  const long prec = p.precision();
  HeisPoint r(prec);
  BigFloat w = p.z;
  BigFloat t(prec);
  for (std::size_t i = 0; i < kN; ++i) {
    r.x[i] = exact::centered_frac(p.x[i]);
    r.y[i] = exact::centered_frac(p.y[i]);
  }
  for (std::size_t i = 0; i < kN; ++i) {
    mpfr_mul(t.get(), p.x[i].get(), r.y[i].get(), MPFR_RNDN);
    mpfr_add(w.get(), w.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), r.x[i].get(), p.y[i].get(), MPFR_RNDN);
    mpfr_sub(w.get(), w.get(), t.get(), MPFR_RNDN);
  }
  r.z = exact::centered_frac(w);
  return r;
}

BigFloat torus_distance(const HeisPoint& p, const HeisPoint& q) {
  const long prec = std::max(p.precision(), q.precision());
  BigFloat best(prec);
  auto take = [&](const BigFloat& a, const BigFloat& b) {
    BigFloat d = exact::abs(exact::centered_frac(a - b));
    if (d > best) best = d;
  };
  for (std::size_t i = 0; i < kN; ++i) {
    take(p.x[i], q.x[i]);
    take(p.y[i], q.y[i]);
  }
  take(p.z, q.z);
  return best;
}

}  // namespace nilrigid::heisenberg
