#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilrigid/action/action.hpp"
#include "nilrigid/exact/linalg.hpp"
#include "nilrigid/exact/number_field.hpp"
#include "nilrigid/exact/roots.hpp"

namespace nilrigid::action {

using exact::AlgebraicEnclosure;
using exact::Interval;
using exact::IntervalMatrix;
using exact::IntPolynomial;
using exact::NumberField;

/// Q-primary component of a generic element C = sum c_i M_i: the generalized
/// kernel of an irreducible factor f of charpoly(C). On the eigenspace of C
/// for a root theta of f every generator has the single eigenvalue
/// mu_i(theta), with mu_i in K = Q[x]/(f).
struct PrimaryComponent {
  IntPolynomial factor;
  std::size_t multiplicity = 1;
  RationalMatrix basis;  // d x (multiplicity * deg f)
  std::shared_ptr<const NumberField> field;
  std::vector<NumberField::Elem> eigenvalue;
  std::vector<AlgebraicEnclosure> conjugates;  // roots of f

  std::size_t degree() const { return field->degree(); }
  std::size_t dim() const { return basis.cols(); }
  /// Index of the complex conjugate of conjugates[k].
  std::size_t conjugate_of(std::size_t k) const;
};

struct GenericDecomposition {
  std::vector<long long> coefficients;
  RationalMatrix element;
  std::vector<PrimaryComponent> components;
  int attempts = 0;
};

inline constexpr int kGenericAttempts = 32;
inline constexpr std::uint64_t kGenericSeed = 0x6e696c7269676964ULL;
inline constexpr long kSpectrumPrecision = 256;

/// Throws ExhaustedError when every attempted combination has a collision.
GenericDecomposition generic_decomposition(const std::vector<RationalMatrix>& generators,
                                           long bits = kSpectrumPrecision, std::uint64_t seed = kGenericSeed);

/// The algebraic number sigma_k(a) for a in K, identified as a root of the
/// minimal polynomial of a.
AlgebraicEnclosure identify_conjugate(const NumberField& K, const NumberField::Elem& a,
                                      const AlgebraicEnclosure& theta, long bits);

/// Basis with interval entries, plus the exact subspace when it is rational.
struct SubspaceEnclosure {
  IntervalMatrix basis{0, 0, kSpectrumPrecision};
  std::optional<RationalSubspace> exact;
  std::size_t dim() const { return basis.cols(); }
};

/// Real span of the generalized eigenspaces of C for the conjugates `which`
/// of component c, inside the C-invariant rational subspace `within` of the
/// component (columns, d x w). `which` must be closed under complex conjugation.
SubspaceEnclosure eigen_piece(const GenericDecomposition& g, std::size_t c, const std::vector<std::size_t>& which,
                              const RationalMatrix& within, long bits);

struct LyapunovEntry {
  std::vector<Interval> chi;        // chi(e_i) for each generator
  bool zero = false;                // certified: every eigenvalue on the unit circle
  std::size_t multiplicity = 1;     // algebraic multiplicity of each eigenvalue
  std::size_t count = 1;            // number of complex eigenvalues in the entry
  std::size_t component = 0;
  std::vector<std::size_t> conjugates;
  std::vector<AlgebraicEnclosure> eigen_data;  // per generator, at conjugates[0]
  SubspaceEnclosure subspace;

  std::size_t dim() const { return multiplicity * count; }
};

struct CoarseClass {
  std::vector<std::size_t> entries;
  bool zero = false;
};

struct LyapunovSpectrum {
  AutoAction action;
  GenericDecomposition generic;
  std::vector<LyapunovEntry> entries;
  std::vector<CoarseClass> classes;
  long precision = kSpectrumPrecision;

  std::size_t class_dim(std::size_t c) const;
  SubspaceEnclosure class_subspace(std::size_t c) const;
  /// Index of the class containing the entry.
  std::size_t class_of(std::size_t entry) const;
};

inline constexpr double kProportionalityTol = 1e-12;

LyapunovSpectrum lyapunov_spectrum(const AutoAction& a, long bits = kSpectrumPrecision);

/// chi(n) for one entry. Exactly [0, 0] when the eigenvalue of alpha^n is on
/// the unit circle (decided exactly); otherwise a certified enclosure.
Interval chi_at(const LyapunovSpectrum& s, std::size_t entry, const IntVec& n, long bits = 0);

/// Sign of chi(n): -1, 0, +1, escalating precision; throws IndeterminateError
/// if undecidable at the maximum precision.
int chi_sign(const LyapunovSpectrum& s, std::size_t entry, const IntVec& n);

SubspaceEnclosure unstable_subalgebra(const LyapunovSpectrum& s, const IntVec& n);
SubspaceEnclosure stable_subalgebra(const LyapunovSpectrum& s, const IntVec& n);

/// Entropy of Haar measure under alpha^n: sum over chi(n) > 0 of dim * chi(n).
Interval haar_entropy(const LyapunovSpectrum& s, const IntVec& n);

/// Sum over entries of dim * chi, per generator; must contain 0.
std::vector<Interval> exponent_sum(const LyapunovSpectrum& s);

/// Checks [v^[chi], v^[chi']] inside the sum of the entries with exponent
/// chi + chi' on interval bases. Returns the failing pairs.
std::vector<std::string> check_grading(const LyapunovSpectrum& s);

/// Positive proportionality of two exponent vectors (nonzero), certified.
bool positively_proportional(const std::vector<Interval>& a, const std::vector<Interval>& b);

}  // namespace nilrigid::action
