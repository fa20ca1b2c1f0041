#pragma once

#include <cstddef>
#include <vector>

#include "nilrigid/exact/matrix.hpp"
#include "nilrigid/exact/real.hpp"

namespace nilrigid::exact {

/// Dense matrix of real intervals, row-major.
class IntervalMatrix {
 public:
  IntervalMatrix(std::size_t rows, std::size_t cols, long prec);
  static IntervalMatrix from_rational(const RationalMatrix& m, long prec);
  static IntervalMatrix from_rows(const std::vector<std::vector<Interval>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long precision() const { return prec_; }
  Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntervalMatrix transpose() const;
  IntervalMatrix operator*(const IntervalMatrix& o) const;

 private:
  std::size_t rows_, cols_;
  long prec_;
  std::vector<Interval> data_;
};

/// Number of singular values certifiably greater than tol. Computed from the
/// inertia of G - tol^2 I (G the smaller Gram matrix) by symmetric pivoted
/// LDL^T in interval arithmetic. Throws IndeterminateError when some pivot
/// enclosure contains 0; the caller should raise precision.
std::size_t numeric_rank(const IntervalMatrix& m, double tol);

struct SmithForm {
  RationalMatrix U, D, V;  // U * m * V = D, U and V unimodular
  std::vector<Integer> invariant_factors() const;
};

/// Smith normal form of an integer matrix.
SmithForm smith_normal_form(const RationalMatrix& m);

/// Z-basis (as columns) of the lattice (column span of b) intersected with Z^d.
RationalMatrix saturate(const RationalMatrix& b);

/// Unimodular matrix P whose first k columns are a Z-basis of span(b) cap Z^d
/// (k = rank b); the rows of P^{-1} beyond k give coordinates on the quotient lattice.
RationalMatrix adapted_basis(const RationalMatrix& b);

/// Z-basis (columns) of the lattice generated by the integer columns of g.
RationalMatrix lattice_basis(const RationalMatrix& g);

/// Integer matrix with integer inverse (exact).
bool is_unimodular(const RationalMatrix& m);

}  // namespace nilrigid::exact
