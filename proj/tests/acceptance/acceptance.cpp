// Acceptance checks. Usage: nilrigid_acceptance [criterion [part]]
// With no arguments every criterion runs. Prints one line per criterion and
// exits 0 iff every selected check passed.

#include <mpfr.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nilrigid/action/irreducibility.hpp"
#include "nilrigid/action/jordan.hpp"
#include "nilrigid/action/spectrum.hpp"
#include "nilrigid/heisenberg/group.hpp"
#include "nilrigid/heisenberg/katok.hpp"
#include "nilrigid/heisenberg/measure.hpp"
#include "nilrigid/heisenberg/plane.hpp"
#include "nilrigid/hprinciple/drift.hpp"
#include "nilrigid/nil/group.hpp"

using namespace nilrigid;
using exact::RationalMatrix;

namespace {

const std::string kFixtures = NILRIGID_FIXTURES_DIR;
constexpr std::uint64_t kSeed = 20261016;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<Rational> random_rationals(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
  std::vector<Rational> v(n);
  for (auto& x : v) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return v;
}

RationalMatrix block_diag(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

const heisenberg::KatokPair& fixture_pair() {
  static const heisenberg::KatokPair pair = heisenberg::load_katok(kFixtures + "/katok_pair.json");
  return pair;
}

// x = (x, y, z) in 13 coordinates; the closed-form residue and integer part.
void closed_form_reduction(const std::vector<Rational>& p, std::vector<Rational>& frac, std::vector<Rational>& integer) {
  frac.assign(13, Rational(0));
  integer.assign(13, Rational(0));
  Rational zz = p[12];
  for (std::size_t i = 0; i < 6; ++i) {
    frac[i] = exact::centered_frac(p[i]);
    frac[6 + i] = exact::centered_frac(p[6 + i]);
    integer[i] = p[i] - frac[i];
    integer[6 + i] = p[6 + i] - frac[6 + i];
    zz += p[i] * frac[6 + i] - frac[i] * p[6 + i];
  }
  frac[12] = exact::centered_frac(zz);
  integer[12] = zz - frac[12];
}

Outcome criterion1() {
  Timer t;
  nil::NilAlgebra h = heisenberg::heisenberg13();
  std::mt19937_64 rng(kSeed + 1);
  std::size_t mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = random_rationals(rng, 13), q = random_rationals(rng, 13);
    std::vector<Rational> closed(13);
    for (std::size_t k = 0; k < 12; ++k) closed[k] = p[k] + q[k];
    closed[12] = p[12] + q[12];
    for (std::size_t k = 0; k < 6; ++k) closed[12] += p[k] * q[6 + k] - q[k] * p[6 + k];
    auto generic = nil::bch(h, p, q);
    if (generic != closed || heisenberg::heis_multiply(p, q) != closed) ++mismatches;
  }
  const double s = t.seconds();
  return {mismatches == 0 && s < 10,
          "1000 pairs, " + std::to_string(mismatches) + " mismatches, " + fmt(s) + " s (< 10 s)"};
}

Outcome criterion2() {
  nil::NilAlgebra h = heisenberg::heisenberg13();
  std::mt19937_64 rng(kSeed + 2);
  std::size_t bad_rep = 0, bad_product = 0, bad_box = 0;
  for (int i = 0; i < 1000; ++i) {
    auto p = random_rationals(rng, 13);
    std::vector<Rational> frac, integer;
    closed_form_reduction(p, frac, integer);
    nil::Reduction r = nil::reduce_fundamental(h, p);
    heisenberg::HeisReduction c = heisenberg::heis_reduce(p);
    if (r.representative != frac || r.lattice_part != integer || c.fractional != frac || c.integer != integer)
      ++bad_rep;
    if (nil::bch(h, r.representative, r.lattice_part) != p) ++bad_product;
    for (const auto& x : r.representative)
      if (x < Rational(-1, 2) || x >= Rational(1, 2)) {
        ++bad_box;
        break;
      }
  }
  return {bad_rep == 0 && bad_product == 0 && bad_box == 0,
          "1000 points, " + std::to_string(bad_rep) + " closed-form mismatches, " + std::to_string(bad_product) +
              " product mismatches, " + std::to_string(bad_box) + " outside the box"};
}

Outcome criterion3() {
  const auto& fixture = fixture_pair();
  if (!fixture.search) return {false, "fixture has no search record"};
  const int hb = fixture.search->poly_height_bound, cb = fixture.search->centralizer_bound;
  Timer ts;
  heisenberg::KatokPair found = heisenberg::search_katok_pair(hb, cb);
  const double search_s = ts.seconds();
  const bool same = found.A == fixture.A && found.B == fixture.B;

  Timer tv;
  auto v = heisenberg::verify_katok_pair(fixture.A, fixture.B, 256);
  const double verify_s = tv.seconds();
  const auto& c = v.certificate;
  const bool exact1 = c.irreducible_a;
  const bool exact2 = c.a.trace_polynomial && c.b.trace_polynomial && c.a.trace_roots_inside == 1 &&
                      c.b.trace_roots_inside == 1;
  const bool exact5 = c.log_rank == 2 && c.rank_witness && c.witness_minor && !c.witness_minor->contains_zero() &&
                      c.precision_bits <= 256;
  bool all_props = true;
  for (bool b : v.property) all_props = all_props && b;
  std::ostringstream d;
  d << "search(" << hb << ", " << cb << ") " << (same ? "reproduces the fixture" : "DIFFERS from the fixture") << " in "
    << fmt(search_s) << " s; verify " << (v.ok() ? "certifies (0)-(5)" : "FAILS") << " in " << fmt(verify_s)
    << " s; exact (1) " << (exact1 ? "yes" : "no") << ", (2) " << (exact2 ? "yes" : "no") << ", (5) rank "
    << c.log_rank << " at " << c.precision_bits << " bits";
  return {same && v.ok() && all_props && exact1 && exact2 && exact5 && search_s <= 1800 && verify_s < 30, d.str()};
}

unsigned threads() {
  if (const char* e = std::getenv("NILRIGID_THREADS")) return static_cast<unsigned>(std::strtoul(e, nullptr, 10));
  return 0;
}

Outcome criterion4() {
  const auto& pair = fixture_pair();
  auto alpha = heisenberg::build_action(pair);
  auto circle = heisenberg::make_circle(pair, 512);
  auto samples = heisenberg::sample_mu(kSeed, 10000);
  auto e128 = heisenberg::check_equivariance(pair, alpha, circle, samples, 5, 128, threads());
  auto e256 = heisenberg::check_equivariance(pair, alpha, circle, samples, 5, 256, threads());
  const bool ok = e128.max_error < 1e-9 && e256.max_error <= e128.max_error / 2;
  return {ok, "10000 samples x 121 n: max error " + fmt(e128.max_error) + " at 128 bits (< 1e-9), " +
                  fmt(e256.max_error) + " at 256 bits (<= half)"};
}

Outcome criterion5() {
  const auto& pair = fixture_pair();
  auto alpha = heisenberg::build_action(pair);
  auto circle = heisenberg::make_circle(pair, 256);
  auto samples = heisenberg::sample_mu(kSeed, 10000);
  auto obstruction = action::obstruction_report(alpha, 5);
  const bool a = obstruction.virtually_cyclic_factor == action::Decision::No;
  auto torus = heisenberg::torus_factor_report(pair, circle, samples, 5, 3, 128, threads());
  const bool b = torus.max_nontrivial_y < 0.04;
  auto center = heisenberg::center_translation_check(circle, samples, Rational(1, 4), 128);
  const bool c = center.on_section_before == samples.size() && center.off_section_after == samples.size();
  auto compact = heisenberg::compactness_scan(circle, samples, Integer(1000000), 128, threads());
  const bool d = compact.fraction_not_detected() >= 0.99;
  std::ostringstream s;
  s << "(a) no virtually cyclic factor " << (a ? "CERTIFIED" : "NOT certified") << "; (b) max |y-character mean| "
    << fmt(torus.max_nontrivial_y) << " (< 0.04); (c) " << center.off_section_after << "/" << samples.size()
    << " leave the section; (d) NOT_DETECTED " << compact.not_detected << "/" << compact.samples << " (>= 99%)";
  return {a && b && c && d, s.str()};
}

double cat_exponent_mpfr() {
  mpfr_t r;
  mpfr_init2(r, 300);
  mpfr_sqrt_ui(r, 5, MPFR_RNDN);
  mpfr_add_ui(r, r, 3, MPFR_RNDN);
  mpfr_div_ui(r, r, 2, MPFR_RNDN);
  mpfr_log(r, r, MPFR_RNDN);
  const double v = mpfr_get_d(r, MPFR_RNDN);
  mpfr_clear(r);
  return v;
}

Outcome criterion6() {
  const std::vector<std::string> suite{"cat_map.json", "cat_product.json", "heis13_action.json", "free3_cat.json"};
  bool ok = true;
  std::ostringstream d;
  for (const auto& name : suite) {
    auto a = action::load_action(kFixtures + "/" + name);
    auto s = action::lyapunov_spectrum(a);
    std::size_t total = 0;
    for (std::size_t c = 0; c < s.classes.size(); ++c) total += s.class_dim(c);
    bool sum_zero = true;
    for (const auto& x : action::exponent_sum(s)) sum_zero = sum_zero && x.contains_zero();
    const auto grading = action::check_grading(s);
    const bool good = total == a.dim() && sum_zero && grading.empty();
    ok = ok && good;
    d << name << " " << (good ? "ok" : "FAILED") << " (dims " << total << "/" << a.dim() << "); ";
  }
  auto cat = action::lyapunov_spectrum(action::load_action(kFixtures + "/cat_map.json"));
  const double h = action::haar_entropy(cat, {1}).mid_double();
  const double err = std::abs(h - cat_exponent_mpfr());
  ok = ok && err <= 1e-8;
  d << "h(cat, 1) error " << fmt(err) << " (<= 1e-8)";
  return {ok, d.str()};
}

RationalMatrix random_unimodular(std::mt19937_64& rng) {
  RationalMatrix m = RationalMatrix::identity(2);
  std::uniform_int_distribution<int> step(-3, 3), pick(0, 2);
  for (int i = 0; i < 6; ++i) {
    RationalMatrix e = RationalMatrix::identity(2);
    switch (pick(rng)) {
      case 0: e(0, 1) = step(rng); break;
      case 1: e(1, 0) = step(rng); break;
      default: e(0, 0) = -1; break;
    }
    m = m * e;
  }
  return m;
}

Outcome criterion7() {
  Timer t;
  const auto& pair = fixture_pair();
  RationalMatrix cubic{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};  // companion of x^3 - x - 1
  std::vector<action::AutoAction> singles{action::AutoAction::toral({RationalMatrix{{2, 1}, {1, 1}}}),
                                          action::AutoAction::toral({cubic}), action::AutoAction::toral({pair.A})};
  std::size_t single_true = 0;
  for (const auto& a : singles) single_true += action::is_virtually_cyclic(a) ? 1 : 0;
  auto katok = action::AutoAction::toral({pair.A, pair.B});
  const bool katok_false = !action::is_virtually_cyclic(katok);
  std::mt19937_64 rng(kSeed + 7);
  std::size_t stable = 0;
  for (int i = 0; i < 20; ++i) {
    auto rebased = action::restrict_to_subgroup(katok, random_unimodular(rng));
    if (action::is_virtually_cyclic(rebased) == !katok_false) ++stable;
  }
  const double s = t.seconds();
  return {single_true == singles.size() && katok_false && stable == 20 && s < 60,
          "single generators " + std::to_string(single_true) + "/" + std::to_string(singles.size()) +
              " true; Katok pair " + (katok_false ? "false" : "TRUE") + "; verdict unchanged under " +
              std::to_string(stable) + "/20 re-bases; " + fmt(s) + " s (< 60 s)"};
}

struct JordanCase {
  std::string name;
  std::vector<RationalMatrix> generators;
  std::vector<Rational> p;
  RationalMatrix expected;  // columns spanning ker(U^p - Id), computed by hand
};

bool same_span(const nil::RationalSubspace& s, const RationalMatrix& cols) {
  return s == nil::RationalSubspace(s.ambient_dim(), cols);
}

Outcome criterion8() {
  const RationalMatrix c{{2, 1}, {1, 1}};
  const RationalMatrix c2 = c * c;
  const RationalMatrix j2{{1, 1}, {0, 1}};
  const RationalMatrix j3{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}};
  // Rotation by a quarter turn coupled to itself: [[R, I], [0, R]].
  const RationalMatrix rot{{0, -1, 1, 0}, {1, 0, 0, 1}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  auto cols = [](std::size_t d, std::vector<std::size_t> idx) {
    RationalMatrix m(d, idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) m(idx[k], k) = 1;
    return m;
  };
  std::vector<JordanCase> cases{
      {"J2 p=(1,0)", {block_diag(c, j2), block_diag(c2, RationalMatrix::identity(2))}, {1, 0}, cols(4, {2})},
      {"J2 p=(0,1)", {block_diag(c, j2), block_diag(c2, RationalMatrix::identity(2))}, {0, 1}, cols(4, {2, 3})},
      {"J3 p=(1,0)", {block_diag(c, j3), block_diag(c.inverse(), j3 * j3)}, {1, 0}, cols(5, {2})},
      {"J3 p=(1/2,0)", {block_diag(c, j3), block_diag(c.inverse(), j3 * j3)}, {Rational(1, 2), 0}, cols(5, {2})},
      {"J3 p=(2,-1)", {block_diag(c, j3), block_diag(c.inverse(), j3 * j3)}, {2, -1}, cols(5, {2, 3, 4})},
      {"rotation p=(1,0)", {block_diag(c, rot), block_diag(c2, RationalMatrix::identity(4))}, {1, 0},
       cols(6, {2, 3})},
  };
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_int_distribution<int> small(-3, 3), den(1, 4);
  std::size_t matched = 0, invariant = 0, checks = 0;
  for (const auto& jc : cases) {
    auto s = action::lyapunov_spectrum(action::AutoAction::toral(jc.generators));
    std::size_t zc = s.classes.size();
    for (std::size_t k = 0; k < s.classes.size(); ++k)
      if (s.classes[k].zero) zc = k;
    if (zc == s.classes.size()) continue;
    auto split = action::semisimple_unipotent_split(s, zc);
    auto iso = action::isometric_subspace(s, split, jc.p);
    if (!iso.exact) continue;
    if (iso.dim() == jc.expected.cols() && same_span(*iso.exact, jc.expected)) ++matched;
    bool inv = true;
    for (int trial = 0; trial < 5; ++trial) {
      action::IntVec m{small(rng), small(rng)};
      std::vector<Rational> q{Rational(small(rng), den(rng)), Rational(small(rng), den(rng))};
      for (auto& x : q) x.canonicalize();
      inv = inv && iso.exact->invariant_under(split.Z(m)) &&
            iso.exact->invariant_under(action::unipotent_real_power(split, q));
    }
    ++checks;
    if (inv) ++invariant;
  }
  return {matched == cases.size() && invariant == cases.size(),
          std::to_string(matched) + "/" + std::to_string(cases.size()) + " fixtures match the hand-computed kernel; " +
              std::to_string(invariant) + "/" + std::to_string(checks) + " invariant under sampled Z^m and U^q"};
}

// part: "bound", "window", "slope" or empty for all three.
Outcome criterion9(const std::string& part) {
  Timer t;
  const bool do_bound = part.empty() || part == "bound";
  const bool do_window = part.empty() || part == "window";
  const bool do_slope = part.empty() || part == "slope";
  std::size_t violations = 0, failures = 0;
  bool slope_ok = true;
  std::ostringstream slopes;
  for (std::size_t d = 2; d <= 6; ++d) {
    if (do_bound) violations += hprinciple::check_drift_bound(d, 1000, kSeed).violations;
    if (do_window)
      for (double eps : {0.5, 0.1, 0.01}) failures += hprinciple::check_good_window(d, eps, 1000, kSeed).failures;
    if (do_slope) {
      auto sweep = hprinciple::scale_sweep(d, {1e-3, 1e-4, 1e-5}, 8, kSeed);
      const bool ok = sweep.relative_deviation() <= 0.15;
      slope_ok = slope_ok && ok;
      slopes << " d=" << d << " " << fmt(sweep.slope) << "/" << fmt(sweep.target) << (ok ? "" : "!");
    }
  }
  const double s = t.seconds();
  std::ostringstream out;
  bool ok = s < 300;
  if (do_bound) {
    out << "bound " << (violations == 0 ? "PASS" : "FAIL") << " (" << violations << " violations); ";
    ok = ok && violations == 0;
  }
  if (do_window) {
    out << "window " << (failures == 0 ? "PASS" : "FAIL") << " (" << failures << " failures); ";
    ok = ok && failures == 0;
  }
  if (do_slope) {
    out << "slope " << (slope_ok ? "PASS" : "FAIL") << " (slope/target:" << slopes.str() << "); ";
    ok = ok && slope_ok;
  }
  out << fmt(s) << " s (< 300 s)";
  return {ok, out.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string part;
  if (argc > 1) only = std::atoi(argv[1]);
  if (argc > 2) part = argv[2];
  if (argc > 3 || only < 0 || only > 9 || (!part.empty() && only != 9)) {
    std::fprintf(stderr, "usage: %s [criterion 1-9 [bound|window|slope]]\n", argv[0]);
    return 1;
  }
  const std::vector<std::function<Outcome()>> checks{
      criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
      [&part] { return criterion9(part); }};
  bool all = true;
  for (int n = 1; n <= 9; ++n) {
    if (only != 0 && n != only) continue;
    Outcome o;
    try {
      o = checks[n - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
