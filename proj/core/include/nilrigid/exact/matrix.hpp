#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "nilrigid/exact/rational.hpp"

namespace nilrigid::exact {

/// Dense matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  /// Column vector.
  static RationalMatrix column(const std::vector<Rational>& v);
  static RationalMatrix from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows);
  static RationalMatrix diagonal_blocks(const std::vector<RationalMatrix>& blocks);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rational> col(std::size_t j) const;
  std::vector<Rational> row(std::size_t i) const;
  void set_col(std::size_t j, const std::vector<Rational>& v);

  RationalMatrix transpose() const;
  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  RationalMatrix hstack(const RationalMatrix& right) const;
  RationalMatrix vstack(const RationalMatrix& below) const;
  RationalMatrix select_cols(const std::vector<std::size_t>& idx) const;

  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator-() const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator*(const Rational& s) const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  RationalMatrix& operator+=(const RationalMatrix& o);
  bool operator==(const RationalMatrix& o) const;
  bool operator!=(const RationalMatrix& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_integer() const;
  bool is_identity() const;
  Rational trace() const;

  /// Integer powers; negative exponents need an invertible matrix.
  RationalMatrix pow(long long e) const;
  Rational determinant() const;
  RationalMatrix inverse() const;
  std::size_t rank() const;
  /// Basis of the right kernel, as columns of the returned matrix (cols may be 0).
  RationalMatrix kernel() const;
  /// Maximal linearly independent subset of columns, kept in order.
  RationalMatrix column_basis() const;
  /// Reduced row echelon form and pivot columns.
  RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  /// Solves this * X = rhs; throws PreconditionError when inconsistent.
  RationalMatrix solve(const RationalMatrix& rhs) const;
  /// Kronecker product.
  RationalMatrix kron(const RationalMatrix& o) const;

  /// Least common multiple of entry denominators.
  Integer common_denominator() const;

  std::string to_string() const;

 private:
  void require_square(const char* what) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator*(const Rational& s, const RationalMatrix& m);

/// Commutator AB - BA.
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Column space intersection of two subspaces given by column bases.
RationalMatrix intersect_subspaces(const RationalMatrix& a, const RationalMatrix& b);

/// True iff every column of `sub` lies in the column span of `space`.
bool contained_in(const RationalMatrix& sub, const RationalMatrix& space);

}  // namespace nilrigid::exact
