#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilrigid/action/action.hpp"
#include "nilrigid/exact/polynomial.hpp"
#include "nilrigid/exact/real.hpp"

namespace nilrigid::heisenberg {

using exact::Interval;
using exact::IntPolynomial;
using exact::RationalMatrix;

/// Eigenvalue pattern of one 6x6 integer matrix, decided from its
/// characteristic polynomial.
struct EigenPattern {
  IntPolynomial charpoly;
  bool reciprocal = false;
  std::optional<IntPolynomial> trace_polynomial;  // x^3 g(x + 1/x) = charpoly
  int trace_roots_inside = 0;                     // distinct roots of g in (-2, 2)
  int real_roots = 0;                             // with multiplicity
  int unit_circle_nonreal = 0;                    // with multiplicity
  bool nonreal_root_of_unity = false;
  bool distinct_real_abs = false;
  std::vector<std::string> approx_roots;          // 20 digits, for reports
};

EigenPattern eigen_pattern(const RationalMatrix& m);

struct KatokCertificate {
  EigenPattern a, b;
  bool commute = false;
  Rational det_a, det_b;
  bool irreducible_a = false;
  /// Rows chi(e_1), chi(e_2) per Lyapunov entry of the Z^2 action on T^6.
  std::vector<std::array<Interval, 2>> log_rows;
  std::size_t log_rank = 0;
  /// Indices of the entries whose 2x2 minor certifies rank 2.
  std::optional<std::array<std::size_t, 2>> rank_witness;
  std::optional<Interval> witness_minor;
  long precision_bits = 256;
};

/// failures name the violated properties: "(0) ..." for the standing
/// SL(6,Z)/commutation assumption, then "(1)".."(5)".
struct KatokVerification {
  std::vector<std::string> failures;
  std::array<bool, 6> property{};
  KatokCertificate certificate;
  bool ok() const { return failures.empty(); }
};

KatokVerification verify_katok_pair(const RationalMatrix& a, const RationalMatrix& b, long bits = 256);

struct KatokSearchRecord {
  int poly_height_bound = 0;
  int centralizer_bound = 0;
  std::array<long, 3> sextic{};     // (a, b, c) of x^6+ax^5+bx^4+cx^3+bx^2+ax+1
  std::vector<long> b_polynomial;   // B = sum p_i A^i
  long candidates_tried = 0;
};

struct KatokPair {
  RationalMatrix A, B;
  KatokCertificate certificate;
  std::optional<KatokSearchRecord> search;
};

/// Enumerates reciprocal sextics by height, then B = p(A) by height. Throws
/// ExhaustedError("search exhausted ...") if nothing qualifies.
KatokPair search_katok_pair(int poly_height_bound, int centralizer_bound);

/// Throws PreconditionError with the failure list when the pair is not
/// a verified Katok pair.
KatokPair make_katok_pair(const RationalMatrix& a, const RationalMatrix& b);

/// Generators block-diag(M, M^{-T}, 1) on the 13-dimensional Heisenberg
/// algebra with [e_i, e_{6+i}] = 2 e_13.
action::AutoAction build_action(const KatokPair& pair);
nil::NilAlgebra heisenberg13();

std::string katok_to_json(const KatokPair& pair);
/// Reads A and B (and the search record when present) and re-verifies; with
/// require_verified the failures raise InputError, otherwise the returned
/// certificate carries them.
KatokPair parse_katok(std::string_view text, bool require_verified = true);
KatokPair load_katok(const std::string& path, bool require_verified = true);
void save_katok(const KatokPair& pair, const std::string& path);

}  // namespace nilrigid::heisenberg
