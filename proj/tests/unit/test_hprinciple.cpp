#include <gtest/gtest.h>

#include <cmath>

#include "nilrigid/hprinciple/drift.hpp"

using namespace nilrigid;
using namespace nilrigid::hprinciple;

namespace {

std::vector<Rational> unit(std::size_t d, std::size_t i, const Rational& s) {
  std::vector<Rational> v(d, Rational(0));
  v[i] = s;
  return v;
}

std::vector<Rational> mat_vec(const RationalMatrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

}  // namespace

TEST(DriftTime, SingleBlockOfSizeThree) {
  // v = delta e_2: the quadratic term wins, T = sqrt(2 / delta).
  auto flow = UnipotentFlow::standard({3});
  auto t = drift_time(flow, unit(3, 2, Rational(1, 1000)));
  ASSERT_FALSE(t.infinite);
  EXPECT_EQ(t.k, 2u);
  EXPECT_EQ(t.power_value, Rational(2000));
  EXPECT_NEAR(t.value, std::sqrt(2000.0), 1e-9);
}

TEST(DriftTime, FixedVectorsAreInfinite) {
  auto flow = UnipotentFlow::standard({3, 2});
  EXPECT_TRUE(drift_time(flow, unit(5, 0, Rational(1, 10))).infinite);
  EXPECT_TRUE(drift_time(flow, unit(5, 3, Rational(1, 10))).infinite);
  EXPECT_THROW(drift_time(flow, std::vector<Rational>(5, Rational(0))), PreconditionError);
}

TEST(DriftTime, ScalesLikeInverseRoot) {
  auto flow = UnipotentFlow::standard({4});
  auto v = unit(4, 3, Rational(1, 100000));
  auto t1 = drift_time(flow, v);
  for (auto& x : v) x *= 64;
  auto t2 = drift_time(flow, v);
  ASSERT_EQ(t1.k, t2.k);
  EXPECT_NEAR(t2.value / t1.value, std::pow(64.0, -1.0 / double(t1.k)), 1e-12);
  EXPECT_NEAR(drift_time(flow, to_double(v)).value, t2.value, 1e-9 * t2.value);
}

TEST(Decomposition, TwoBlock) {
  const Rational delta(1, 1000);
  auto flow = UnipotentFlow::standard({2});
  auto v = unit(2, 1, delta);
  ASSERT_EQ(drift_time(flow, v).power_value, Rational(1000));
  const Rational t(250);
  DriftSplit s = drift_decomposition(flow, v, t);
  EXPECT_EQ(s.w, (std::vector<Rational>{t * delta, 0}));
  EXPECT_EQ(s.w_perp, (std::vector<Rational>{0, delta}));
}

TEST(Decomposition, FixedPartIsKilledByTheGenerator) {
  auto flow = UnipotentFlow::standard({3, 2, 1});
  std::vector<Rational> v{Rational(1, 7), Rational(-2, 9), Rational(3, 11), Rational(1, 5), Rational(-1, 3),
                          Rational(2)};
  for (const Rational& t : {Rational(0), Rational(1, 2), Rational(17, 3)}) {
    DriftSplit s = drift_decomposition(flow, v, t);
    std::vector<Rational> zero(6, Rational(0));
    EXPECT_EQ(mat_vec(flow.generator_log, s.w), zero);
    // w + w_perp = U^t v, with U^t from the matrix exponential.
    auto ut = mat_vec(flow.at(t), v);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(s.w[i] + s.w_perp[i], ut[i]);
    // |w|^2 polynomial agrees at t.
    Rational n2(0);
    for (const auto& x : s.w) n2 += x * x;
    EXPECT_EQ(fixed_part_norm2(flow, v)(t), n2);
  }
}

TEST(Decomposition, DoubleMatchesRational) {
  auto flow = UnipotentFlow::standard({4, 2});
  std::vector<Rational> v{Rational(1, 3000), Rational(-1, 7000), Rational(1, 5000), Rational(1, 2000),
                          Rational(1, 9000), Rational(-1, 4000)};
  DriftSplit e = drift_decomposition(flow, v, Rational(13, 2));
  DriftSplitD d = drift_decomposition(flow, to_double(v), 6.5);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(d.w[i], e.w[i].get_d(), 1e-15);
    EXPECT_NEAR(d.w_perp[i], e.w_perp[i].get_d(), 1e-15);
  }
}

TEST(Flow, FromLogRecoversJordanChains) {
  // N = P J P^{-1} for J with blocks 3 and 1.
  RationalMatrix j(4, 4);
  j(0, 1) = 1;
  j(1, 2) = 1;
  RationalMatrix p{{1, 2, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0}, {0, 0, 1, 1}};
  RationalMatrix n = p * j * p.inverse();
  auto flow = UnipotentFlow::from_log(n);
  EXPECT_EQ(flow.block_dims, (std::vector<std::size_t>{3, 1}));
  RationalMatrix b = flow.jordan_basis;
  EXPECT_EQ(n * b, b * j);
  EXPECT_EQ(flow.generator_log, n);
  EXPECT_THROW(UnipotentFlow::from_log(RationalMatrix::identity(2)), PreconditionError);
}

TEST(GoodWindow, ClosedFormForTwoBlock) {
  // |w(t)| = t delta and T = 1 / delta, so the good fraction is 1 - kappa.
  auto flow = UnipotentFlow::standard({2});
  auto v = unit(2, 1, Rational(1, 2000));
  for (const Rational& kappa : {Rational(1, 10), Rational(1, 3), Rational(3, 4)}) {
    GoodWindow g = good_window(flow, v, kappa);
    ASSERT_TRUE(g.exact_fraction.has_value());
    const double expect = 1 - kappa.get_d();
    EXPECT_NEAR(*g.exact_fraction, expect, 1e-15);
    EXPECT_NEAR(g.sampled_fraction, expect, 1.0 / double(kWindowSamples));
  }
}

TEST(GoodWindow, ThreeBlockExactMatchesSampled) {
  auto flow = UnipotentFlow::standard({3});
  std::vector<Rational> v{Rational(0), Rational(-1, 5000), Rational(1, 3000)};
  GoodWindow g = good_window(flow, v, Rational(1, 20));
  ASSERT_TRUE(g.exact_fraction.has_value());
  EXPECT_NEAR(*g.exact_fraction, g.sampled_fraction, 2.0 / double(kWindowSamples));
}

TEST(GoodWindow, Preconditions) {
  auto flow = UnipotentFlow::standard({2});
  EXPECT_THROW(good_window(flow, unit(2, 1, Rational(1, 10)), Rational(1, 2)), PreconditionError);
  EXPECT_THROW(good_window(flow, unit(2, 0, Rational(1, 10000)), Rational(1, 2)), PreconditionError);
  EXPECT_THROW(good_window(flow, unit(2, 1, Rational(1, 10000)), Rational(0)), PreconditionError);
  EXPECT_THROW(frozen_kappa(1, Rational(1, 2)), PreconditionError);
  EXPECT_THROW(frozen_kappa(3, Rational(1)), PreconditionError);
  EXPECT_THROW(random_instance(1, 1e-4, 1, 0), PreconditionError);
  EXPECT_THROW(scale_sweep(1, {1e-3, 1e-4}, 2, 1), PreconditionError);
}

TEST(RandomInstances, DeterministicAndSized) {
  auto a = random_instance(5, 1e-4, 9, 3);
  auto b = random_instance(5, 1e-4, 9, 3);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.flow.block_dims, b.flow.block_dims);
  EXPECT_GE(a.flow.max_block(), 2u);
  EXPECT_NEAR(norm(to_double(a.v)), 1e-4, 1e-12);
}

TEST(ScaleSweep, SlopeOfTwoBlockIsOne) {
  // For a single 2-block, max |w_perp| = |v| exactly.
  ScaleSweep s = scale_sweep(2, {1e-3, 1e-4, 1e-5}, 4, 1);
  EXPECT_NEAR(s.slope, 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(s.target, 0.5);
}
