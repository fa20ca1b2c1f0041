#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilrigid/action/action.hpp"
#include "nilrigid/heisenberg/plane.hpp"

namespace nilrigid::heisenberg {

using action::IntVec;

/// One draw from m_S x m_T6: theta = 2 pi u on the circle, y in the box.
/// Coordinates are dyadic rationals, so a sample can be realized at any
/// precision.
struct MuSample {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  Rational u;                   // in [0, 1)
  std::array<Rational, 6> y;    // in [-1/2, 1/2)^6
};

/// Sample i depends only on (seed, i).
MuSample mu_sample(std::uint64_t seed, std::uint64_t index);
std::vector<MuSample> sample_mu(std::uint64_t seed, std::size_t count, std::uint64_t first = 0);

struct RealizedSample {
  BigFloat theta;
  Vec6 x;
  HeisPoint point;  // psi(x, y)
};
RealizedSample realize(const Circle& c, const MuSample& s, long bits);

/// Worker count: `requested` if nonzero, else hardware concurrency.
unsigned worker_count(unsigned requested);

struct EquivarianceRow {
  IntVec n;
  double max_error = 0;
};

struct EquivarianceReport {
  long bits = 0;
  int n_box = 0;
  std::size_t samples = 0;
  double max_error = 0;
  std::size_t worst_sample = 0;
  IntVec worst_n;
  std::vector<EquivarianceRow> per_n;  // n1-major order
};

/// For every sample and n in [-n_box, n_box]^2: reduce alpha^n psi(x, y) to
/// the fundamental domain and compare with psi(beta^n x, {hat beta^n y}).
EquivarianceReport check_equivariance(const KatokPair& pair, const action::AutoAction& alpha, const Circle& circle,
                                      const std::vector<MuSample>& samples, int n_box, long bits,
                                      unsigned threads = 0);

struct Compactness {
  bool compact = false;
  std::optional<Integer> denominator;
  std::vector<Rational> witness;  // x = witness when compact
};

/// The orbit of H = {(0, v, 0)} through p is compact iff x is rational. Reports
/// COMPACT when one denominator q <= bound puts every x_k within tol of a
/// multiple of 1/q.
Compactness h_orbit_compactness(const HeisPoint& p, const Integer& denominator_bound = Integer(1000000),
                                double tol = 1e-12);

struct CompactnessScan {
  std::size_t samples = 0;
  std::size_t not_detected = 0;
  Integer denominator_bound;
  double fraction_not_detected() const { return samples ? double(not_detected) / double(samples) : 0.0; }
};
CompactnessScan compactness_scan(const Circle& c, const std::vector<MuSample>& samples,
                                 const Integer& denominator_bound, long bits, unsigned threads = 0);

struct CharacterRow {
  std::array<int, 6> k{};
  double re = 0, im = 0;
  double abs() const;
};

struct CircleCharacterRow {
  std::array<int, 6> k{};
  double re = 0, im = 0;
  /// J_0(2 pi rho |(k.re, k.im)|): the m_S average of e(k.x).
  double expected = 0;
};

struct BirkhoffRow {
  int radius = 0;
  std::size_t count = 0;   // (2 radius + 1)^2
  double mean_abs = 0;     // mean over samples and characters
  double mc_rate = 0;      // 1 / sqrt(count)
};

struct TorusFactorReport {
  std::size_t samples = 0;
  int character_box = 0;
  /// k = 0 first, then one of each pair +-k with ||k|| <= character_box.
  std::vector<CharacterRow> y_characters;
  double max_nontrivial_y = 0;
  double threshold = 0;  // 4 / sqrt(samples)
  double max_circle_distance = 0;
  std::vector<CircleCharacterRow> x_characters;
  std::vector<BirkhoffRow> birkhoff;
};

TorusFactorReport torus_factor_report(const KatokPair& pair, const Circle& c, const std::vector<MuSample>& samples,
                                      int n_box, int character_box, long bits, unsigned threads = 0);

struct CenterTranslationReport {
  Rational t;
  std::size_t samples = 0;
  std::size_t on_section_before = 0;
  std::size_t off_section_after = 0;
};

/// Translates every sample point by the central element (0, 0, t).
CenterTranslationReport center_translation_check(const Circle& c, const std::vector<MuSample>& samples,
                                                 const Rational& t, long bits, double tol = 1e-12);

/// CSV emitters; `header` entries are written first as "# key=value" lines.
using CsvHeader = std::map<std::string, std::string>;
std::string equivariance_csv(const EquivarianceReport& r, const CsvHeader& header);
std::string character_csv(const TorusFactorReport& r, const CsvHeader& header);
/// Rows n1, n2 and the 13 coordinates of the reduced point alpha^n psi(sample).
std::string orbit_trace_csv(const action::AutoAction& alpha, const Circle& c, const MuSample& s, int n_box,
                            long bits, const CsvHeader& header);

}  // namespace nilrigid::heisenberg
