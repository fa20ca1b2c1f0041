#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilrigid/exact/linalg.hpp"
#include "nilrigid/exact/matrix.hpp"

namespace nilrigid::nil {

using exact::RationalMatrix;
using Vec = std::vector<Rational>;

/// One structure-constant entry [e_i, e_j] = sum_k c_k e_k (0-based indices).
struct BracketEntry {
  std::size_t i, j;
  std::vector<std::pair<std::size_t, Rational>> terms;
};

/// Nilpotent Lie algebra with rational structure constants in a basis
/// e_1..e_d whose integer span is log of the lattice.
class NilAlgebra {
 public:
  /// Builds and validates: antisymmetric closure (with consistency check),
  /// Jacobi identity, nilpotency. If declared_class is given it must match.
  NilAlgebra(std::size_t dim, const std::vector<BracketEntry>& brackets,
             std::optional<int> declared_class = std::nullopt);

  static NilAlgebra abelian(std::size_t dim);
  /// Heisenberg algebra of dimension 2n+1 with [e_i, e_{n+i}] = scale * e_{2n+1}.
  static NilAlgebra heisenberg(std::size_t n, const Rational& scale = 1);
  /// Direct sum with structure constants placed block-diagonally.
  static NilAlgebra direct_sum(const NilAlgebra& a, const NilAlgebra& b);

  std::size_t dim() const { return dim_; }
  int nilpotency_class() const { return class_; }
  bool is_abelian() const { return class_ <= 1; }

  /// [e_i, e_j] as a coordinate vector.
  const Vec& structure(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  Vec bracket(const Vec& u, const Vec& v) const;
  /// Matrix of ad(u) = [u, .].
  RationalMatrix ad(const Vec& u) const;
  /// Brackets [b_i, c_j] of all column pairs, as columns.
  RationalMatrix brackets_of(const RationalMatrix& b, const RationalMatrix& c) const;

  /// True iff [e_i, e_j] lies in span{e_k : k > max(i, j)} for all i, j: the
  /// coordinate order is adapted to the lower central series.
  bool has_malcev_order() const;

  /// Nonzero structure constants with i < j (0-based).
  std::vector<BracketEntry> entries() const;

  bool operator==(const NilAlgebra& o) const { return dim_ == o.dim_ && table_ == o.table_; }

 private:
  NilAlgebra() = default;
  void finish(std::optional<int> declared_class);

  std::size_t dim_ = 0;
  int class_ = 1;
  std::vector<Vec> table_;
};

/// Subspace of an algebra given by a basis of columns (full column rank).
class RationalSubspace {
 public:
  RationalSubspace() = default;
  RationalSubspace(std::size_t ambient_dim, RationalMatrix basis);
  static RationalSubspace whole(std::size_t d) { return {d, RationalMatrix::identity(d)}; }
  static RationalSubspace zero(std::size_t d) { return {d, RationalMatrix(d, 0)}; }
  /// Column span of arbitrary generators (basis extracted).
  static RationalSubspace span(std::size_t d, const RationalMatrix& generators);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const RationalMatrix& basis() const { return basis_; }

  bool contains(const Vec& v) const;
  bool contains(const RationalSubspace& s) const;
  bool operator==(const RationalSubspace& o) const { return contains(o) && o.contains(*this); }
  RationalSubspace sum(const RationalSubspace& o) const;
  RationalSubspace intersect(const RationalSubspace& o) const;
  /// Invariant under the linear map m (exact).
  bool invariant_under(const RationalMatrix& m) const;

 private:
  std::size_t ambient_ = 0;
  RationalMatrix basis_;
};

/// [g, g_{j-1}] iterated from g_0 = g down to 0.
std::vector<RationalSubspace> lower_central_series(const NilAlgebra& alg);

RationalSubspace center(const NilAlgebra& alg);

bool is_subalgebra(const NilAlgebra& alg, const RationalSubspace& s);
bool is_ideal(const NilAlgebra& alg, const RationalSubspace& s);

enum class Rationality { Rational, NotRational };

struct RationalityResult {
  Rationality verdict = Rationality::NotRational;
  /// Exact witness when rational.
  std::optional<RationalSubspace> witness;
  /// Largest denominator needed (or found to exceed the bound).
  Integer max_denominator;
};

/// A subspace given exactly is rational by construction.
bool is_rational_subspace(const RationalSubspace& s);

/// Decides rationality of a numerically given subspace (columns are interval
/// vectors): the interval reduced echelon form is rationalized entrywise by
/// continued fractions with denominators up to denominator_bound. Rational
/// when every entry interval contains such a rational; NotRational when the
/// simplest rational in some entry interval needs a larger denominator.
/// Throws IndeterminateError when the enclosures are too wide to decide.
RationalityResult is_rational_subspace(const exact::IntervalMatrix& basis, const Integer& denominator_bound);

struct Quotient {
  NilAlgebra algebra;
  /// (d - k) x d matrix mapping coordinates of g to coordinates of g / ideal.
  RationalMatrix projection;
  /// d x (d - k) matrix whose columns are lifts of the quotient basis.
  RationalMatrix section;
};

/// Quotient by a rational ideal, in a basis adapted to the image lattice
/// (Smith normal form of the ideal's lattice).
Quotient quotient(const NilAlgebra& alg, const RationalSubspace& ideal);

}  // namespace nilrigid::nil
