#include "nilrigid/exact/real.hpp"

#include <algorithm>
#include <memory>

namespace nilrigid::exact {

namespace {

long prec_of(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

BigFloat min_of(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }
BigFloat max_of(const BigFloat& a, const BigFloat& b) { return a > b ? a : b; }

}  // namespace

BigFloat::BigFloat(long prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, long prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, long prec, mpfr_rnd_t rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), rnd);
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

Rational BigFloat::to_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

std::string BigFloat::to_string(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

BigFloat BigFloat::operator+(const BigFloat& o) const {
  BigFloat r(prec_of(*this, o));
  mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator-(const BigFloat& o) const {
  BigFloat r(prec_of(*this, o));
  mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator*(const BigFloat& o) const {
  BigFloat r(prec_of(*this, o));
  mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator/(const BigFloat& o) const {
  BigFloat r(prec_of(*this, o));
  mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
  return r;
}
BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}
BigFloat& BigFloat::operator+=(const BigFloat& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::pi(long prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

#define NILRIGID_UNARY(name, fn)              \
  BigFloat name(const BigFloat& x) {          \
    BigFloat r(x.precision());                \
    fn(r.get(), x.get(), MPFR_RNDN);          \
    return r;                                 \
  }
NILRIGID_UNARY(abs, mpfr_abs)
NILRIGID_UNARY(sqrt, mpfr_sqrt)
NILRIGID_UNARY(log, mpfr_log)
NILRIGID_UNARY(exp, mpfr_exp)
NILRIGID_UNARY(sin, mpfr_sin)
NILRIGID_UNARY(cos, mpfr_cos)
#undef NILRIGID_UNARY

BigFloat floor(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_floor(r.get(), x.get());
  return r;
}

BigFloat centered_frac(const BigFloat& x) {
  BigFloat half(0.5, x.precision());
  BigFloat r = x - floor(x + half);
  return r;
}

// ---------------- Interval ----------------

Interval::Interval(long prec) : lo_(prec), hi_(prec) {}

Interval::Interval(const Rational& q, long prec) : lo_(q, prec, MPFR_RNDD), hi_(q, prec, MPFR_RNDU) {}

Interval::Interval(const Rational& lo, const Rational& hi, long prec)
    : lo_(lo, prec, MPFR_RNDD), hi_(hi, prec, MPFR_RNDU) {
  if (hi < lo) throw PreconditionError("Interval: lo > hi");
}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

Interval Interval::point(double v, long prec) { return {BigFloat(v, prec), BigFloat(v, prec)}; }

BigFloat Interval::mid() const {
  BigFloat m = lo_ + hi_;
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

BigFloat Interval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Interval Interval::join(const Interval& o) const { return {min_of(lo_, o.lo_), max_of(hi_, o.hi_)}; }

Interval Interval::operator+(const Interval& o) const {
  const long p = std::max(precision(), o.precision());
  BigFloat l(p), h(p);
  mpfr_add(l.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(h.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Interval Interval::operator-(const Interval& o) const {
  const long p = std::max(precision(), o.precision());
  BigFloat l(p), h(p);
  mpfr_sub(l.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(h.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }

Interval Interval::operator-() const {
  BigFloat l = -hi_, h = -lo_;
  return {std::move(l), std::move(h)};
}

Interval Interval::operator*(const Interval& o) const {
  const long p = std::max(precision(), o.precision());
  const BigFloat* a[2] = {&lo_, &hi_};
  const BigFloat* b[2] = {&o.lo_, &o.hi_};
  BigFloat l(p), h(p), t(p);
  bool first = true;
  for (auto* x : a)
    for (auto* y : b) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || t < l) l = t;
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || t > h) h = t;
      first = false;
    }
  return {std::move(l), std::move(h)};
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) throw IndeterminateError("interval division by an interval containing 0");
  const long p = std::max(precision(), o.precision());
  const BigFloat* a[2] = {&lo_, &hi_};
  const BigFloat* b[2] = {&o.lo_, &o.hi_};
  BigFloat l(p), h(p), t(p);
  bool first = true;
  for (auto* x : a)
    for (auto* y : b) {
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || t < l) l = t;
      mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || t > h) h = t;
      first = false;
    }
  return {std::move(l), std::move(h)};
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
}

Interval sqr(const Interval& x) {
  const long p = x.precision();
  BigFloat l(p), h(p);
  if (x.lo().sign() >= 0) {
    mpfr_sqr(l.get(), x.lo().get(), MPFR_RNDD);
    mpfr_sqr(h.get(), x.hi().get(), MPFR_RNDU);
  } else if (x.hi().sign() <= 0) {
    mpfr_sqr(l.get(), x.hi().get(), MPFR_RNDD);
    mpfr_sqr(h.get(), x.lo().get(), MPFR_RNDU);
  } else {
    BigFloat a(p), b(p);
    mpfr_sqr(a.get(), x.lo().get(), MPFR_RNDU);
    mpfr_sqr(b.get(), x.hi().get(), MPFR_RNDU);
    h = a > b ? a : b;
  }
  return {std::move(l), std::move(h)};
}

Interval sqrt(const Interval& x) {
  if (x.hi().sign() < 0) throw PreconditionError("sqrt of a negative interval");
  const long p = x.precision();
  BigFloat l(p), h(p);
  if (x.lo().sign() > 0) mpfr_sqrt(l.get(), x.lo().get(), MPFR_RNDD);
  mpfr_sqrt(h.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Interval log(const Interval& x) {
  if (x.lo().sign() <= 0) throw IndeterminateError("log of an interval reaching 0");
  const long p = x.precision();
  BigFloat l(p), h(p);
  mpfr_log(l.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(h.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Interval exp(const Interval& x) {
  const long p = x.precision();
  BigFloat l(p), h(p);
  mpfr_exp(l.get(), x.lo().get(), MPFR_RNDD);
  mpfr_exp(h.get(), x.hi().get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Interval abs(const Interval& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  BigFloat h = -x.lo() > x.hi() ? -x.lo() : x.hi();
  return {BigFloat(x.precision()), std::move(h)};
}

Interval pi_interval(long prec) {
  BigFloat l(prec), h(prec);
  mpfr_const_pi(l.get(), MPFR_RNDD);
  mpfr_const_pi(h.get(), MPFR_RNDU);
  return {std::move(l), std::move(h)};
}

Interval atan2(const Interval& y, const Interval& x) {
  if (x.contains_zero() && y.contains_zero()) throw IndeterminateError("atan2 at the origin");
  if (x.contains_zero() && y.lo().sign() <= 0 && y.hi().sign() >= 0)
    throw IndeterminateError("atan2 across the branch cut");
  if (x.hi().sign() < 0 && y.contains_zero()) throw IndeterminateError("atan2 across the branch cut");
  // atan2 is monotone in each variable on each corner-free region; evaluate at corners.
  const long p = std::max(x.precision(), y.precision());
  const BigFloat* xs[2] = {&x.lo(), &x.hi()};
  const BigFloat* ys[2] = {&y.lo(), &y.hi()};
  BigFloat l(p), h(p), t(p);
  bool first = true;
  for (auto* a : ys)
    for (auto* b : xs) {
      mpfr_atan2(t.get(), a->get(), b->get(), MPFR_RNDD);
      if (first || t < l) l = t;
      mpfr_atan2(t.get(), a->get(), b->get(), MPFR_RNDU);
      if (first || t > h) h = t;
      first = false;
    }
  return {std::move(l), std::move(h)};
}

ComplexInterval ComplexInterval::inflate(const BigFloat& r) const {
  Interval d(-r, r);
  return {re + d, im + d};
}

}  // namespace nilrigid::exact
