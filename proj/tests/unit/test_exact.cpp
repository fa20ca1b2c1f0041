#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>
#include <random>

#include "nilrigid/exact/factor.hpp"
#include "nilrigid/exact/linalg.hpp"
#include "nilrigid/exact/number_field.hpp"
#include "nilrigid/exact/roots.hpp"

using namespace nilrigid;
using namespace nilrigid::exact;

namespace {

IntPolynomial P(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPolynomial(v);
}

// Faddeev-LeVerrier, used as an independent characteristic polynomial.
std::vector<Rational> leverrier(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RationalMatrix m = RationalMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix am = a * m;
    c[n - k] = -am.trace() / Rational(static_cast<long>(k));
    m = am + RationalMatrix::identity(n) * c[n - k];
  }
  return c;
}

Rational cofactor_det(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Rational s(0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) keep.push_back(c);
    RationalMatrix minor = a.block(1, 0, n - 1, n).select_cols(keep);
    s += (j % 2 ? -1 : 1) * a(0, j) * cofactor_det(minor);
  }
  return s;
}

RationalMatrix random_int_matrix(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> u(-bound, bound);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST(Rational, CenteredFractionalPart) {
  EXPECT_EQ(centered_frac(Rational(3, 2)), Rational(-1, 2));
  EXPECT_EQ(centered_frac(Rational(-1, 2)), Rational(-1, 2));
  EXPECT_EQ(centered_frac(Rational(7, 3)), Rational(1, 3));
  EXPECT_EQ(centered_round(Rational(7, 3)), Integer(2));
  EXPECT_EQ(centered_round(Rational(1, 2)), Integer(1));
}

TEST(Rational, ParseAndSimplest) {
  EXPECT_EQ(parse_rational(" -22/6 "), Rational(-11, 3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_EQ(simplest_between(Rational(33, 100), Rational(34, 100)), Rational(1, 3));
  EXPECT_EQ(from_double(0.375), Rational(3, 8));
}

TEST(Polynomial, GcdAndDivision) {
  RatPolynomial a = to_rational(P({2, -3, 1}));  // (x-1)(x-2)
  RatPolynomial b = to_rational(P({3, -4, 1}));  // (x-1)(x-3)
  EXPECT_EQ(make_monic(gcd(a, b)), to_rational(P({-1, 1})));
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(q * b + r, a);
}

TEST(Factor, SophieGermain) {
  auto f = factor_rational(P({4, 0, 0, 0, 1}));
  ASSERT_EQ(f.terms.size(), 2u);
  EXPECT_EQ(f.expand(), P({4, 0, 0, 0, 1}));
  for (const auto& t : f.terms) EXPECT_EQ(t.factor.degree(), 2);
}

TEST(Factor, SwinnertonDyerIsIrreducible) {
  // x^4 - 10x^2 + 1 splits modulo every prime.
  EXPECT_TRUE(is_irreducible(P({1, 0, -10, 0, 1})));
}

TEST(Factor, CyclotomicSplitOfXSixMinusOne) {
  auto f = factor_rational(P({-1, 0, 0, 0, 0, 0, 1}));
  ASSERT_EQ(f.terms.size(), 4u);
  EXPECT_EQ(f.expand(), P({-1, 0, 0, 0, 0, 0, 1}));
  EXPECT_TRUE(all_roots_are_roots_of_unity(P({-1, 0, 0, 0, 0, 0, 1})));
  EXPECT_EQ(cyclotomic(6), P({1, -1, 1}));
}

TEST(Factor, RepeatedFactors) {
  IntPolynomial p = P({-1, 1}) * P({-1, 1}) * P({1, 0, 1});
  auto f = factor_rational(p);
  EXPECT_EQ(f.expand(), p);
  auto sq = squarefree_decomposition(p);
  bool found_square = false;
  for (const auto& t : sq) found_square |= t.multiplicity == 2;
  EXPECT_TRUE(found_square);
}

TEST(Sturm, CountsRootsInHalfOpenIntervals) {
  IntPolynomial p = P({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  SturmSequence s(p);
  EXPECT_EQ(s.count(Rational(0), Rational(5, 2)), 2);
  EXPECT_EQ(s.count(Rational(1), Rational(2)), 1);
  EXPECT_EQ(s.count_all(), 3);
}

TEST(Roots, SquareRootOfTwoAgainstMpfr) {
  auto roots = isolate_roots(P({-2, 0, 1}), 256);
  ASSERT_EQ(roots.size(), 2u);
  mpfr_t r;
  mpfr_init2(r, 300);
  mpfr_sqrt_ui(r, 2, MPFR_RNDN);
  ComplexInterval box = roots[1].box(256);
  EXPECT_TRUE(roots[1].real);
  EXPECT_LE(mpfr_cmp(box.re.lo().get(), r), 0);
  EXPECT_GE(mpfr_cmp(box.re.hi().get(), r), 0);
  mpfr_clear(r);
}

TEST(Roots, UnitCircleAndRootsOfUnity) {
  auto roots = isolate_roots(P({1, 1, 1}));
  ASSERT_EQ(roots.size(), 2u);
  for (const auto& r : roots) {
    EXPECT_FALSE(r.real);
    EXPECT_TRUE(on_unit_circle(r));
    EXPECT_TRUE(is_root_of_unity(r));
  }
  EXPECT_EQ(unit_circle_root_count(P({1, 1, 1, 1, 1})), 4);
  // x^4 - x^3 - x^2 - x + 1: two real roots and one unit-circle pair.
  EXPECT_EQ(unit_circle_root_count(P({1, -1, -1, -1, 1})), 2);
  EXPECT_EQ(unit_circle_root_count(P({-3, 1})), 0);
}

TEST(Roots, TracePolynomialOfReciprocalSextic) {
  IntPolynomial f = P({1, -1, -2, 1, -2, -1, 1});
  ASSERT_TRUE(is_reciprocal(f));
  // x^6 + a x^5 + b x^4 + c x^3 + ... gives t^3 + a t^2 + (b - 3) t + (c - 2a).
  EXPECT_EQ(trace_polynomial(f), P({3, -5, -1, 1}));
}

TEST(Matrix, CharpolyAgainstLeverrier) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m = random_int_matrix(rng, 4, 5);
    auto c = leverrier(m);
    IntPolynomial p = charpoly(m);
    for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(Rational(p[k]), c[k]);
  }
}

TEST(Matrix, DeterminantAgainstCofactors) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m = random_int_matrix(rng, 5, 4);
    EXPECT_EQ(m.determinant(), cofactor_det(m));
  }
}

TEST(Matrix, InverseKernelSolve) {
  RationalMatrix m{{2, 1, 0}, {1, 1, 0}, {0, 0, 3}};
  EXPECT_TRUE((m * m.inverse()).is_identity());
  RationalMatrix s{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  RationalMatrix k = s.kernel();
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE((s * k).is_zero());
}

TEST(Smith, InvariantFactors) {
  RationalMatrix m{{2, 4}, {6, 8}};
  auto sf = smith_normal_form(m);
  EXPECT_EQ(sf.U * m * sf.V, sf.D);
  auto f = sf.invariant_factors();
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], Integer(2));
  EXPECT_EQ(f[1], Integer(4));
  EXPECT_TRUE(is_unimodular(sf.U));
  EXPECT_TRUE(is_unimodular(sf.V));
}

TEST(NumberField, QuadraticUnits) {
  NumberField K(P({-2, 0, 1}));
  auto s = K.generator();
  auto u = K.add(K.one(), s);
  auto v = K.sub(K.one(), s);
  EXPECT_TRUE(K.is_rational(K.mul(u, v)));
  EXPECT_EQ(K.mul(u, v), K.from_rational(Rational(-1)));
  EXPECT_EQ(K.mul(u, K.inv(u)), K.one());
  EXPECT_EQ(K.minimal_polynomial(u), P({-1, -2, 1}));
}

TEST(Interval, ElementaryFunctions) {
  Interval two(Rational(2), 200);
  Interval r = sqrt(two);
  EXPECT_TRUE(r.positive());
  EXPECT_NEAR(r.mid_double(), std::sqrt(2.0), 1e-15);
  EXPECT_LT(r.width().to_double(), 1e-50);
  EXPECT_NEAR(pi_interval(200).mid_double(), M_PI, 1e-15);
  EXPECT_TRUE((exp(log(two)) - two).contains_zero());
}
