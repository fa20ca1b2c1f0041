#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>

#include "nilrigid/heisenberg/group.hpp"
#include "nilrigid/heisenberg/katok.hpp"
#include "nilrigid/heisenberg/measure.hpp"
#include "nilrigid/heisenberg/plane.hpp"
#include "nilrigid/nil/group.hpp"

using namespace nilrigid;
using namespace nilrigid::heisenberg;

namespace {

const std::string kFixtures = NILRIGID_FIXTURES_DIR;

const KatokPair& fixture_pair() {
  static const KatokPair pair = load_katok(kFixtures + "/katok_pair.json");
  return pair;
}

const Circle& fixture_circle() {
  static const Circle c = make_circle(fixture_pair(), 256);
  return c;
}

std::vector<Rational> random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-40, 40), den(1, 8);
  std::vector<Rational> p(13);
  for (auto& x : p) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return p;
}

HeisPoint point_with_x(const std::array<double, 6>& x) {
  HeisPoint p(128);
  for (std::size_t i = 0; i < 6; ++i) {
    p.x[i] = BigFloat(x[i], 128);
    p.y[i] = BigFloat(0.0, 128);
  }
  p.z = BigFloat(0.0, 128);
  return p;
}

}  // namespace

TEST(Group, ClosedFormMatchesBch) {
  nil::NilAlgebra h = heisenberg13();
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    auto p = random_point(rng), q = random_point(rng);
    EXPECT_EQ(heis_multiply(p, q), nil::bch(h, p, q));
  }
}

TEST(Group, ClosedFormReductionMatchesGeneric) {
  nil::NilAlgebra h = heisenberg13();
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    auto p = random_point(rng);
    HeisReduction r = heis_reduce(p);
    nil::Reduction g = nil::reduce_fundamental(h, p);
    EXPECT_EQ(r.fractional, g.representative);
    EXPECT_EQ(r.integer, g.lattice_part);
    EXPECT_EQ(heis_multiply(r.fractional, r.integer), p);
  }
}

TEST(Katok, FixtureVerifies) {
  const KatokPair& pair = fixture_pair();
  KatokVerification v = verify_katok_pair(pair.A, pair.B);
  EXPECT_TRUE(v.ok());
  for (bool b : v.property) EXPECT_TRUE(b);
  EXPECT_EQ(v.certificate.log_rank, 2u);
}

TEST(Katok, DegeneratePairsFail) {
  const KatokPair& pair = fixture_pair();
  EXPECT_FALSE(verify_katok_pair(pair.A, pair.A).ok());
  EXPECT_FALSE(verify_katok_pair(pair.A, pair.A.inverse()).ok());
  auto id = RationalMatrix::identity(6);
  KatokVerification v = verify_katok_pair(id, id);
  EXPECT_FALSE(v.ok());
  EXPECT_FALSE(v.property[1]);
  EXPECT_THROW(make_katok_pair(pair.A, pair.A), PreconditionError);
}

TEST(Katok, JsonRoundTripAndSearchBounds) {
  const KatokPair& pair = fixture_pair();
  KatokPair back = parse_katok(katok_to_json(pair));
  EXPECT_EQ(back.A, pair.A);
  EXPECT_EQ(back.B, pair.B);
  ASSERT_TRUE(back.search.has_value());
  EXPECT_EQ(back.search->sextic, pair.search->sextic);
  EXPECT_THROW(search_katok_pair(1, 1), ExhaustedError);
  EXPECT_THROW(search_katok_pair(0, 1), PreconditionError);
}

TEST(Katok, ActionIsValid) {
  action::AutoAction a = build_action(fixture_pair());
  EXPECT_EQ(a.dim(), 13u);
  EXPECT_TRUE(action::validate_action(a).ok());
}

TEST(Plane, RotationIdentities) {
  const KatokPair& pair = fixture_pair();
  InvariantPlane w = invariant_plane(pair, 256);
  EXPECT_TRUE(w.angles_irrational);
  Vec6 re = w.re_mid(256), im = w.im_mid(256);
  double norm2 = 0, dot = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    norm2 += re[i].to_double() * re[i].to_double() + im[i].to_double() * im[i].to_double();
    dot += re[i].to_double() * im[i].to_double();
  }
  EXPECT_NEAR(norm2, 2.0, 1e-14);
  EXPECT_NEAR(dot, 0.0, 1e-14);
  const double c = std::cos(w.angle_a.mid_double()), s = std::sin(w.angle_a.mid_double());
  for (std::size_t i = 0; i < 6; ++i) {
    double a_re = 0, a_im = 0;
    for (std::size_t j = 0; j < 6; ++j) {
      a_re += pair.A(i, j).get_d() * re[j].to_double();
      a_im += pair.A(i, j).get_d() * im[j].to_double();
    }
    EXPECT_NEAR(a_re, c * re[i].to_double() - s * im[i].to_double(), 1e-12);
    EXPECT_NEAR(a_im, s * re[i].to_double() + c * im[i].to_double(), 1e-12);
  }
}

TEST(Plane, RadiusIsTight) {
  InvariantPlane w = invariant_plane(fixture_pair(), 256);
  CircleRadius r = circle_radius(w);
  EXPECT_EQ(r.rho, r.rho_max / 2);
  const double amp = r.max_amplitude.mid_double();
  EXPECT_LT(r.rho_max.get_d() * amp, 0.5);
  EXPECT_GE(Rational(r.rho_max + Rational(1, 64)).get_d() * amp, 0.5);
}

TEST(Plane, SectionMapRejectsOffCirclePoints) {
  const Circle& c = fixture_circle();
  Vec6 x = circle_point(c, BigFloat(0.3, 256));
  Vec6 y;
  for (auto& v : y) v = BigFloat(0.1, 256);
  HeisPoint p = section_map(c, x, y);
  EXPECT_TRUE(on_section(c, p));
  EXPECT_LT(circle_residual(c, x).to_double(), 1e-60);
  Vec6 off = x;
  off[0] += BigFloat(1e-6, 256);
  EXPECT_THROW(section_map(c, off, y), PreconditionError);
  Vec6 y_bad = y;
  y_bad[2] = BigFloat(0.5, 256);
  EXPECT_THROW(section_map(c, x, y_bad), PreconditionError);
}

TEST(Measure, SamplesDependOnlyOnSeedAndIndex) {
  auto batch = sample_mu(1, 10);
  MuSample s = mu_sample(1, 5);
  EXPECT_EQ(batch[5].u, s.u);
  EXPECT_EQ(batch[5].y, s.y);
  EXPECT_EQ(sample_mu(1, 3, 5)[0].y, s.y);
  EXPECT_NE(mu_sample(2, 5).u, s.u);
  for (const auto& y : s.y) {
    EXPECT_GE(y, Rational(-1, 2));
    EXPECT_LT(y, Rational(1, 2));
  }
}

TEST(Measure, EquivarianceOnFewSamples) {
  const KatokPair& pair = fixture_pair();
  auto alpha = build_action(pair);
  auto samples = sample_mu(3, 8);
  auto r = check_equivariance(pair, alpha, fixture_circle(), samples, 2, 128, 1);
  EXPECT_EQ(r.per_n.size(), 25u);
  EXPECT_LT(r.max_error, 1e-25);
}

TEST(Measure, CompactnessDenominators) {
  auto half = h_orbit_compactness(point_with_x({0.5, 0, 0, 0, 0, 0}));
  ASSERT_TRUE(half.compact);
  EXPECT_EQ(*half.denominator, Integer(2));
  auto zero = h_orbit_compactness(point_with_x({0, 0, 0, 0, 0, 0}));
  ASSERT_TRUE(zero.compact);
  EXPECT_EQ(*zero.denominator, Integer(1));
  auto mixed = h_orbit_compactness(point_with_x({1.0 / 3, 0.2, 0, 0, 0, 0}));
  ASSERT_TRUE(mixed.compact);
  EXPECT_EQ(*mixed.denominator, Integer(15));
  EXPECT_FALSE(h_orbit_compactness(point_with_x({std::sqrt(2.0) - 1, 0, 0, 0, 0, 0})).compact);
}

TEST(Measure, CenterTranslationLeavesSection) {
  auto samples = sample_mu(4, 20);
  auto r = center_translation_check(fixture_circle(), samples, Rational(1, 4), 128);
  EXPECT_EQ(r.on_section_before, 20u);
  EXPECT_EQ(r.off_section_after, 20u);
}

TEST(Measure, CircleCharactersMatchQuadrature) {
  const Circle& c = fixture_circle();
  auto samples = sample_mu(5, 50);
  auto r = torus_factor_report(fixture_pair(), c, samples, 1, 1, 128, 1);
  ASSERT_FALSE(r.x_characters.empty());
  Vec6 re = c.plane.re_mid(128), im = c.plane.im_mid(128);
  const double rho = c.rho.get_d();
  const int steps = 4096;
  for (const auto& row : r.x_characters) {
    double kr = 0, ki = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      kr += row.k[i] * re[i].to_double();
      ki += row.k[i] * im[i].to_double();
    }
    double sum = 0;
    for (int s = 0; s < steps; ++s) {
      double th = 2 * M_PI * s / steps;
      sum += std::cos(2 * M_PI * rho * (std::cos(th) * kr - std::sin(th) * ki));
    }
    EXPECT_NEAR(row.expected, sum / steps, 1e-10);
  }
}
