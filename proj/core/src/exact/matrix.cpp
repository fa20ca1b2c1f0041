#include "nilrigid/exact/matrix.hpp"

#include <sstream>
#include <utility>

namespace nilrigid::exact {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::column(const std::vector<Rational>& v) {
  RationalMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RationalMatrix RationalMatrix::from_columns(const std::vector<std::vector<Rational>>& cols,
                                            std::size_t rows) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw PreconditionError("from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

RationalMatrix RationalMatrix::diagonal_blocks(const std::vector<RationalMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  RationalMatrix m(r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

std::vector<Rational> RationalMatrix::col(std::size_t j) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Rational> RationalMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

void RationalMatrix::set_col(std::size_t j, const std::vector<Rational>& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                                     std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw PreconditionError("block out of range");
  RationalMatrix b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

RationalMatrix RationalMatrix::hstack(const RationalMatrix& right) const {
  if (cols_ == 0) return right;
  if (right.cols_ == 0) return *this;
  if (rows_ != right.rows_) throw PreconditionError("hstack: row mismatch");
  RationalMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

RationalMatrix RationalMatrix::vstack(const RationalMatrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (cols_ != below.cols_) throw PreconditionError("vstack: column mismatch");
  RationalMatrix m(rows_ + below.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(rows_ + i, j) = below(i, j);
  return m;
}

RationalMatrix RationalMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  RationalMatrix m(rows_, idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, idx[k]);
  return m;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  RationalMatrix r = *this;
  r += o;
  return r;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  RationalMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

RationalMatrix RationalMatrix::operator-() const {
  RationalMatrix r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("matrix product shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o(k, j) != 0) r(i, j) += a * o(k, j);
      }
    }
  }
  return r;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
  RationalMatrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& m) { return m * s; }

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw PreconditionError("matrix-vector shape mismatch");
  std::vector<Rational> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j] != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool RationalMatrix::is_integer() const {
  for (const auto& x : data_)
    if (x.get_den() != 1) return false;
  return true;
}

bool RationalMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Rational RationalMatrix::trace() const {
  require_square("trace");
  Rational t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

void RationalMatrix::require_square(const char* what) const {
  if (!is_square()) throw PreconditionError(std::string(what) + ": matrix is not square");
}

RationalMatrix RationalMatrix::pow(long long e) const {
  require_square("pow");
  RationalMatrix base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  RationalMatrix result = identity(rows_);
  while (n > 0) {
    if (n & 1ULL) result = result * base;
    n >>= 1ULL;
    if (n > 0) base = base * base;
  }
  return result;
}

RationalMatrix RationalMatrix::rref(std::vector<std::size_t>* pivots) const {
  RationalMatrix m = *this;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && m(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols_; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < cols_; ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t RationalMatrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

Rational RationalMatrix::determinant() const {
  require_square("determinant");
  RationalMatrix m = *this;
  Rational det = 1;
  const std::size_t n = rows_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    Rational inv = 1 / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

RationalMatrix RationalMatrix::inverse() const {
  require_square("inverse");
  RationalMatrix aug = hstack(identity(rows_));
  std::vector<std::size_t> piv;
  RationalMatrix r = aug.rref(&piv);
  if (piv.size() < rows_ || piv[rows_ - 1] >= rows_) throw PreconditionError("inverse: singular matrix");
  return r.block(0, rows_, rows_, rows_);
}

RationalMatrix RationalMatrix::kernel() const {
  std::vector<std::size_t> piv;
  RationalMatrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols_);
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  return from_columns(basis, cols_);
}

RationalMatrix RationalMatrix::column_basis() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return select_cols(piv);
}

RationalMatrix RationalMatrix::solve(const RationalMatrix& rhs) const {
  if (rhs.rows() != rows_) throw PreconditionError("solve: shape mismatch");
  RationalMatrix aug = hstack(rhs);
  std::vector<std::size_t> piv;
  RationalMatrix r = aug.rref(&piv);
  RationalMatrix x(cols_, rhs.cols());
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] >= cols_) throw PreconditionError("solve: inconsistent system");
    for (std::size_t j = 0; j < rhs.cols(); ++j) x(piv[k], j) = r(k, cols_ + j);
  }
  return x;
}

RationalMatrix RationalMatrix::kron(const RationalMatrix& o) const {
  RationalMatrix m(rows_ * o.rows_, cols_ * o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Rational& a = (*this)(i, j);
      if (a == 0) continue;
      for (std::size_t k = 0; k < o.rows_; ++k)
        for (std::size_t l = 0; l < o.cols_; ++l) m(i * o.rows_ + k, j * o.cols_ + l) = a * o(k, l);
    }
  return m;
}

Integer RationalMatrix::common_denominator() const {
  Integer d = 1;
  for (const auto& x : data_) d = lcm(d, x.get_den());
  return d;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

RationalMatrix intersect_subspaces(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) return RationalMatrix(a.rows(), 0);
  // a x = b y  <=>  [a | -b] (x; y) = 0
  RationalMatrix k = a.hstack(-b).kernel();
  if (k.cols() == 0) return RationalMatrix(a.rows(), 0);
  return (a * k.block(0, 0, a.cols(), k.cols())).column_basis();
}

bool contained_in(const RationalMatrix& sub, const RationalMatrix& space) {
  if (sub.cols() == 0) return true;
  if (space.cols() == 0) return sub.is_zero();
  return space.hstack(sub).rank() == space.rank();
}

}  // namespace nilrigid::exact
