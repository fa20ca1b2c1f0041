#include <gtest/gtest.h>
#include <mpfr.h>

#include <string>

#include "nilrigid/action/action.hpp"
#include "nilrigid/action/irreducibility.hpp"
#include "nilrigid/action/jordan.hpp"
#include "nilrigid/action/spectrum.hpp"

using namespace nilrigid;
using namespace nilrigid::action;

namespace {

const std::string kFixtures = NILRIGID_FIXTURES_DIR;

RationalMatrix cat() { return RationalMatrix{{2, 1}, {1, 1}}; }

RationalMatrix block_diag(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// log((3 + sqrt 5) / 2) computed directly with MPFR.
double cat_exponent() {
  mpfr_t r;
  mpfr_init2(r, 200);
  mpfr_sqrt_ui(r, 5, MPFR_RNDN);
  mpfr_add_ui(r, r, 3, MPFR_RNDN);
  mpfr_div_ui(r, r, 2, MPFR_RNDN);
  mpfr_log(r, r, MPFR_RNDN);
  double d = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clear(r);
  return d;
}

std::size_t zero_class(const LyapunovSpectrum& s) {
  for (std::size_t c = 0; c < s.classes.size(); ++c)
    if (s.classes[c].zero) return c;
  ADD_FAILURE() << "no zero class";
  return 0;
}

}  // namespace

TEST(Validate, ReportsEveryFailure) {
  EXPECT_TRUE(validate_action(AutoAction::toral({cat()})).ok());
  EXPECT_FALSE(validate_action(AutoAction::toral({RationalMatrix{{2, 0}, {0, 1}}})).ok());
  EXPECT_FALSE(validate_action(AutoAction::toral({RationalMatrix{{Rational(1, 2), 0}, {0, 2}}})).ok());
  EXPECT_FALSE(validate_action(AutoAction::toral({cat(), RationalMatrix{{1, 1}, {0, 1}}})).ok());
  // Generator that does not preserve the Heisenberg bracket: swaps x and y.
  AutoAction h{nil::NilAlgebra::heisenberg(1), {RationalMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}};
  auto report = validate_action(h);
  EXPECT_FALSE(report.ok());
  EXPECT_THROW(require_valid(h), PreconditionError);
}

TEST(Spectrum, CatMapExponents) {
  LyapunovSpectrum s = lyapunov_spectrum(AutoAction::toral({cat()}));
  ASSERT_EQ(s.entries.size(), 2u);
  const double chi = cat_exponent();
  std::vector<double> values;
  for (const auto& e : s.entries) values.push_back(e.chi[0].mid_double());
  std::sort(values.begin(), values.end());
  EXPECT_NEAR(values[0], -chi, 1e-14);
  EXPECT_NEAR(values[1], chi, 1e-14);
  EXPECT_NEAR(haar_entropy(s, {1}).mid_double(), chi, 1e-8);
  EXPECT_NEAR(haar_entropy(s, {-3}).mid_double(), 3 * chi, 1e-8);
  EXPECT_EQ(chi_sign(s, 0, {0}), 0);
  for (const auto& sum : exponent_sum(s)) EXPECT_TRUE(sum.contains_zero());
}

TEST(Spectrum, ClassesCoverTheAlgebra) {
  AutoAction a = load_action(kFixtures + "/heis13_action.json");
  LyapunovSpectrum s = lyapunov_spectrum(a);
  std::size_t total = 0;
  for (std::size_t c = 0; c < s.classes.size(); ++c) total += s.class_dim(c);
  EXPECT_EQ(total, 13u);
  for (const auto& sum : exponent_sum(s)) EXPECT_TRUE(sum.contains_zero());
  EXPECT_TRUE(check_grading(s).empty());
}

TEST(Spectrum, StableAndUnstableSubalgebras) {
  LyapunovSpectrum s = lyapunov_spectrum(AutoAction::toral({cat()}));
  EXPECT_EQ(unstable_subalgebra(s, {1}).dim(), 1u);
  EXPECT_EQ(stable_subalgebra(s, {1}).dim(), 1u);
  EXPECT_FALSE(unstable_subalgebra(s, {1}).exact.has_value());
}

TEST(Jordan, MultiplicativeDecomposition) {
  RationalMatrix c = cat();
  RationalMatrix m(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = c(i, j);
      m(i, 2 + j) = c(i, j);
      m(2 + i, 2 + j) = c(i, j);
    }
  JordanParts p = multiplicative_jordan(m);
  EXPECT_EQ(p.semisimple * p.unipotent, m);
  EXPECT_EQ(p.semisimple * p.unipotent, p.unipotent * p.semisimple);
  EXPECT_TRUE((p.nilpotent_log * p.nilpotent_log).is_zero());
  EXPECT_EQ(nilpotent_exp(p.nilpotent_log), p.unipotent);
  EXPECT_EQ(unipotent_log(p.unipotent), p.nilpotent_log);
  EXPECT_EQ(p.semisimple, block_diag(c, c));
}

TEST(Jordan, IsometricSubspaceOfUnipotentBlock) {
  RationalMatrix j{{1, 1}, {0, 1}};
  RationalMatrix m1 = block_diag(cat(), j);
  RationalMatrix m2 = block_diag(cat() * cat(), RationalMatrix::identity(2));
  LyapunovSpectrum s = lyapunov_spectrum(AutoAction::toral({m1, m2}));
  const std::size_t z = zero_class(s);
  EXPECT_EQ(s.class_dim(z), 2u);
  auto split = semisimple_unipotent_split(s, z);
  EXPECT_EQ(unipotent_real_power(split, {Rational(1), Rational(0)}), block_diag(RationalMatrix::identity(2), j));

  auto k1 = isometric_subspace(s, split, {Rational(1), Rational(0)});
  ASSERT_EQ(k1.dim(), 1u);
  ASSERT_TRUE(k1.exact.has_value());
  EXPECT_EQ(*k1.exact, nil::RationalSubspace(4, RationalMatrix{{0}, {0}, {1}, {0}}));

  auto k2 = isometric_subspace(s, split, {Rational(0), Rational(1)});
  EXPECT_EQ(k2.dim(), 2u);
}

TEST(Irreducibility, VirtuallyCyclicVerdicts) {
  EXPECT_TRUE(is_virtually_cyclic(AutoAction::toral({cat()})));
  EXPECT_EQ(is_totally_irreducible(AutoAction::toral({cat()})).verdict, Decision::Yes);
  AutoAction product = load_action(kFixtures + "/cat_product.json");
  EXPECT_EQ(is_totally_irreducible(product).verdict, Decision::No);
  EXPECT_EQ(obstruction_report(product, 2).virtually_cyclic_factor, Decision::Yes);
}

TEST(Irreducibility, HeisenbergActionHasNoCyclicFactor) {
  AutoAction a = load_action(kFixtures + "/heis13_action.json");
  ObstructionReport r = obstruction_report(a, 2);
  EXPECT_EQ(r.virtually_cyclic_factor, Decision::No);
  ASSERT_FALSE(r.abelian_factors.empty());
  for (const auto& f : r.abelian_factors) EXPECT_EQ(f.virtually_cyclic, Decision::No);
}

TEST(Quotients, AbelianizationOfHeisenbergAction) {
  AutoAction a = load_action(kFixtures + "/heis13_action.json");
  InducedQuotient q = abelianization(a);
  EXPECT_EQ(q.action.dim(), 12u);
  EXPECT_TRUE(q.action.algebra.is_abelian());
  EXPECT_TRUE(validate_action(q.action).ok());
  for (std::size_t i = 0; i < a.rank(); ++i)
    EXPECT_EQ(q.quotient.projection * a.generators[i], q.action.generators[i] * q.quotient.projection);
}

TEST(Io, ActionRoundTrip) {
  AutoAction a = load_action(kFixtures + "/cat_product.json");
  AutoAction b = parse_action(action_to_json(a));
  ASSERT_EQ(b.rank(), 2u);
  EXPECT_EQ(b.generators[1], a.generators[1]);
  EXPECT_THROW(load_action(kFixtures + "/malformed.json"), InputError);
}
