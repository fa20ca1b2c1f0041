#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "nilrigid/exact/matrix.hpp"
#include "nilrigid/exact/polynomial.hpp"
#include "nilrigid/exact/real.hpp"

namespace nilrigid::exact {

/// K = Q[x]/(f) for an irreducible f; elements are coefficient vectors in the
/// power basis 1, x, ..., x^(n-1).
class NumberField {
 public:
  using Elem = std::vector<Rational>;

  explicit NumberField(const IntPolynomial& f);

  std::size_t degree() const { return n_; }
  const IntPolynomial& modulus() const { return f_; }

  Elem zero() const { return Elem(n_); }
  Elem one() const;
  Elem from_rational(const Rational& q) const;
  /// The class of x.
  Elem generator() const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(const Elem& a, const Rational& q) const;
  Elem inv(const Elem& a) const;
  Elem pow(const Elem& a, long long e) const;
  bool is_zero(const Elem& a) const;
  bool is_rational(const Elem& a) const;

  /// Matrix of multiplication by a on the power basis.
  RationalMatrix multiplication_matrix(const Elem& a) const;
  /// Minimal polynomial over Q (primitive, positive leading coefficient).
  IntPolynomial minimal_polynomial(const Elem& a) const;
  /// Enclosure of a(z) for every z in the given box (interval Horner).
  ComplexInterval embed(const Elem& a, const ComplexInterval& z) const;

 private:
  IntPolynomial f_;
  RatPolynomial fr_;
  std::size_t n_;
  // x^k mod f for k in [n, 2n-2].
  std::vector<Elem> high_powers_;
};

/// Dense matrix over a number field.
class KMatrix {
 public:
  KMatrix(std::shared_ptr<const NumberField> K, std::size_t rows, std::size_t cols);
  static KMatrix from_rational(std::shared_ptr<const NumberField> K, const RationalMatrix& m);

  const NumberField& field() const { return *K_; }
  std::shared_ptr<const NumberField> field_ptr() const { return K_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  NumberField::Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const NumberField::Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  KMatrix operator*(const KMatrix& o) const;
  KMatrix operator-(const KMatrix& o) const;
  bool is_zero() const;

  /// Kernel basis as columns.
  KMatrix kernel() const;
  std::size_t rank() const;
  /// Reduced row echelon form with pivot columns.
  KMatrix rref(std::vector<std::size_t>* pivots) const;
  KMatrix pow(unsigned e) const;
  KMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// Solves this * X = rhs when consistent (throws otherwise).
  KMatrix solve(const KMatrix& rhs) const;
  NumberField::Elem trace() const;
  static KMatrix identity(std::shared_ptr<const NumberField> K, std::size_t n);

 private:
  std::shared_ptr<const NumberField> K_;
  std::size_t rows_, cols_;
  std::vector<NumberField::Elem> data_;
};

}  // namespace nilrigid::exact
