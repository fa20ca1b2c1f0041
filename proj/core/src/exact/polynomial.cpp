#include "nilrigid/exact/polynomial.hpp"

#include <algorithm>

namespace nilrigid::exact {

std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree()) return {RatPolynomial{}, a};
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  Rational inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational f = r[static_cast<std::size_t>(k)] * inv;
    if (f == 0) continue;
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {RatPolynomial(std::move(q)), RatPolynomial(std::move(r))};
}

RatPolynomial operator%(const RatPolynomial& a, const RatPolynomial& b) { return divmod(a, b).second; }
RatPolynomial operator/(const RatPolynomial& a, const RatPolynomial& b) { return divmod(a, b).first; }

RatPolynomial make_monic(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading());
}

RatPolynomial gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial x = a, y = b;
  while (!y.is_zero()) {
    RatPolynomial r = x % y;
    x = std::move(y);
    y = make_monic(r);
  }
  return make_monic(x);
}

ExtendedGcd extended_gcd(const RatPolynomial& a, const RatPolynomial& b) {
  RatPolynomial r0 = a, r1 = b;
  RatPolynomial s0 = RatPolynomial::constant(1), s1;
  RatPolynomial t0, t1 = RatPolynomial::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    RatPolynomial s2 = s0 - q * s1;
    RatPolynomial t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

Integer content(const IntPolynomial& p) {
  Integer g = 0;
  for (const auto& a : p.coeffs()) g = gcd(g, a);
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  Integer g = content(p);
  if (p.leading() < 0) g = -g;
  std::vector<Integer> c = p.coeffs();
  for (auto& a : c) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(c));
}

IntPolynomial to_primitive(const RatPolynomial& p) {
  Integer den = 1;
  for (const auto& a : p.coeffs()) den = lcm(den, a.get_den());
  std::vector<Integer> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) {
    Rational v = a * den;
    c.push_back(v.get_num());
  }
  return primitive_part(IntPolynomial(std::move(c)));
}

RatPolynomial to_rational(const IntPolynomial& p) { return p.cast<Rational>(); }

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw PreconditionError("exact_quotient: division by zero");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw PreconditionError("exact_quotient: not divisible");
  std::vector<Integer> r = a.coeffs();
  const int db = b.degree();
  std::vector<Integer> q(static_cast<std::size_t>(a.degree() - db + 1));
  Integer rem;
  for (int k = a.degree(); k >= db; --k) {
    Integer& top = r[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    Integer f;
    mpz_tdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    if (rem != 0) throw PreconditionError("exact_quotient: not divisible");
    q[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  for (int k = 0; k < db; ++k)
    if (r[static_cast<std::size_t>(k)] != 0) throw PreconditionError("exact_quotient: not divisible");
  return IntPolynomial(std::move(q));
}

bool divides(const IntPolynomial& b, const IntPolynomial& a) {
  if (b.is_zero()) return a.is_zero();
  return (to_rational(a) % to_rational(b)).is_zero();
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return primitive_part(p);
  RatPolynomial q = to_rational(p);
  RatPolynomial g = gcd(q, q.derivative());
  return to_primitive(q / g);
}

RatPolynomial compose(const RatPolynomial& p, const RatPolynomial& q) {
  RatPolynomial acc;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * q + RatPolynomial::constant(p.coeffs()[k]);
  return acc;
}

bool is_reciprocal(const IntPolynomial& p) {
  if (p.is_zero()) return false;
  IntPolynomial r = p.reversed();
  if (r.degree() != p.degree()) return false;
  return r == p || r == -p;
}

IntPolynomial trace_polynomial(const IntPolynomial& p) {
  if (!is_reciprocal(p) || p.reversed() != p || p.degree() % 2 != 0)
    throw PreconditionError("trace_polynomial: need a self-reciprocal polynomial of even degree");
  // Peel off the top power of (x + 1/x): x^{-m} p = sum_k a_k (x^k + x^{-k}) + a_0,
  // then rewrite x^k + x^{-k} as a polynomial in t = x + 1/x via Chebyshev-type recursion.
  const int m = p.degree() / 2;
  // d_k(t) = x^k + x^{-k}: d_0 = 2, d_1 = t, d_{k+1} = t d_k - d_{k-1}.
  std::vector<IntPolynomial> dk;
  dk.push_back(IntPolynomial::constant(2));
  dk.push_back(IntPolynomial::x());
  for (int k = 2; k <= m; ++k) dk.push_back(IntPolynomial::x() * dk[static_cast<std::size_t>(k - 1)] - dk[static_cast<std::size_t>(k - 2)]);
  IntPolynomial h = IntPolynomial::constant(p[static_cast<std::size_t>(m)]);
  for (int k = 1; k <= m; ++k) h = h + dk[static_cast<std::size_t>(k)] * p[static_cast<std::size_t>(m + k)];
  return h;
}

RatPolynomial charpoly_rational(const RationalMatrix& m) {
  if (!m.is_square()) throw PreconditionError("charpoly: matrix is not square");
  const std::size_t n = m.rows();
  RationalMatrix h = m;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 <= n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    Rational inv = 1 / h(j + 1, j);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      Rational f = h(i, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h(i, c) -= f * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += f * h(r, i);
    }
  }
  std::vector<RatPolynomial> p(n + 1);
  p[0] = RatPolynomial::constant(1);
  const RatPolynomial x = RatPolynomial::x();
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = (x - RatPolynomial::constant(h(k - 1, k - 1))) * p[k - 1];
    Rational prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= h(i + 1, i);
      if (prod == 0) break;
      p[k] = p[k] - p[i] * Rational(prod * h(i, k - 1));
    }
  }
  return p[n];
}

IntPolynomial charpoly(const RationalMatrix& m) { return to_primitive(charpoly_rational(m)); }

RationalMatrix evaluate(const RatPolynomial& p, const RationalMatrix& m) {
  RationalMatrix acc = RationalMatrix::zero(m.rows(), m.cols());
  const RationalMatrix id = RationalMatrix::identity(m.rows());
  for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = acc * m + id * p.coeffs()[k];
  return acc;
}

RationalMatrix companion_matrix(const IntPolynomial& p) {
  if (!p.is_monic()) throw PreconditionError("companion_matrix: polynomial must be monic");
  const std::size_t n = static_cast<std::size_t>(p.degree());
  RationalMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = Rational(-p[i]);
  return c;
}

namespace {

int sign_of(const Rational& q) { return sgn(q); }

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace

SturmSequence::SturmSequence(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("Sturm sequence of the zero polynomial");
  RatPolynomial f = to_rational(squarefree_part(p));
  seq_.push_back(f);
  seq_.push_back(f.derivative());
  while (!seq_.back().is_zero()) {
    RatPolynomial r = seq_[seq_.size() - 2] % seq_.back();
    if (r.is_zero()) break;
    // Positive rescaling keeps signs and keeps coefficients small.
    IntPolynomial ri = to_primitive(-r);
    RatPolynomial rr = to_rational(ri);
    if (sgn((-r).leading()) != sgn(rr.leading())) rr = -rr;
    seq_.push_back(rr);
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> s;
  s.reserve(seq_.size());
  for (const auto& q : seq_) s.push_back(sign_of(q(x)));
  return variations(s);
}

int SturmSequence::variations_at_infinity(int sign) const {
  std::vector<int> s;
  for (const auto& q : seq_) {
    int lc = sgn(q.leading());
    s.push_back((sign < 0 && q.degree() % 2 == 1) ? -lc : lc);
  }
  return variations(s);
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  if (b <= a) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_above(const Rational& a) const { return variations_at(a) - variations_at_infinity(1); }
int SturmSequence::count_below_or_at(const Rational& b) const { return variations_at_infinity(-1) - variations_at(b); }
int SturmSequence::count_all() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

Rational root_bound(const IntPolynomial& p) {
  if (p.degree() < 1) return 1;
  Integer mx = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Integer a = abs(p[static_cast<std::size_t>(k)]);
    if (a > mx) mx = a;
  }
  Rational lc = abs(p.leading());
  return Rational(mx) / lc + 1;
}

}  // namespace nilrigid::exact
