#include "nilrigid/exact/linalg.hpp"

#include <algorithm>
#include <utility>

namespace nilrigid::exact {

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols, long prec)
    : rows_(rows), cols_(cols), prec_(prec), data_(rows * cols, Interval(prec)) {}

IntervalMatrix IntervalMatrix::from_rational(const RationalMatrix& m, long prec) {
  IntervalMatrix r(m.rows(), m.cols(), prec);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Interval(m(i, j), prec);
  return r;
}

IntervalMatrix IntervalMatrix::from_rows(const std::vector<std::vector<Interval>>& rows) {
  const std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
  long prec = kDefaultPrecision;
  if (nr && nc) prec = rows[0][0].precision();
  IntervalMatrix r(nr, nc, prec);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) throw PreconditionError("IntervalMatrix: ragged rows");
    for (std::size_t j = 0; j < nc; ++j) r(i, j) = rows[i][j];
  }
  return r;
}

IntervalMatrix IntervalMatrix::transpose() const {
  IntervalMatrix t(cols_, rows_, prec_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntervalMatrix IntervalMatrix::operator*(const IntervalMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("IntervalMatrix product shape mismatch");
  IntervalMatrix r(rows_, o.cols_, std::max(prec_, o.prec_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Interval acc(r.prec_);
      for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * o(k, j);
      r(i, j) = acc;
    }
  return r;
}

std::size_t numeric_rank(const IntervalMatrix& m, double tol) {
  if (!(tol > 0)) throw PreconditionError("numeric_rank: tol must be positive");
  if (m.rows() == 0 || m.cols() == 0) return 0;
  IntervalMatrix g = m.rows() < m.cols() ? m * m.transpose() : m.transpose() * m;
  const std::size_t n = g.rows();
  const long prec = g.precision();
  Rational t = from_double(tol);
  Interval t2(Rational(t * t), prec);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = g(i, i) - t2;
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  std::size_t positive = 0;
  while (!active.empty()) {
    // Symmetric pivoting: largest diagonal magnitude.
    std::size_t best = 0;
    BigFloat bestv(prec);
    for (std::size_t a = 0; a < active.size(); ++a) {
      BigFloat v = abs(g(active[a], active[a]).mid());
      if (a == 0 || v > bestv) {
        best = a;
        bestv = v;
      }
    }
    const std::size_t p = active[best];
    const Interval piv = g(p, p);
    if (piv.contains_zero()) throw IndeterminateError("numeric_rank: singular value enclosure straddles tol");
    if (piv.positive()) ++positive;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
    for (std::size_t a : active) {
      Interval f = g(a, p) / piv;
      for (std::size_t b : active) g(a, b) = g(a, b) - f * g(p, b);
    }
  }
  return positive;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i).get_num());
  return out;
}

namespace {

void swap_rows(RationalMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
void swap_cols(RationalMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_a += k * row_b
void add_row(RationalMatrix& m, std::size_t a, std::size_t b, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) += k * m(b, j);
}
void add_col(RationalMatrix& m, std::size_t a, std::size_t b, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) += k * m(i, b);
}
Integer num(const Rational& q) { return q.get_num(); }

}  // namespace

SmithForm smith_normal_form(const RationalMatrix& m) {
  if (!m.is_integer()) throw PreconditionError("smith_normal_form: integer matrix required");
  const std::size_t r = m.rows(), c = m.cols();
  RationalMatrix a = m, U = RationalMatrix::identity(r), V = RationalMatrix::identity(c);
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = r, bj = c;
      Integer best;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs(num(a(i, j)));
          if (bi == r || v < best) {
            bi = i;
            bj = j;
            best = v;
          }
        }
      if (bi == r) break;
      swap_rows(a, t, bi);
      swap_rows(U, t, bi);
      swap_cols(a, t, bj);
      swap_cols(V, t, bj);
      bool dirty = false;
      const Integer p = num(a(t, t));
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), num(a(i, t)).get_mpz_t(), p.get_mpz_t());
        add_row(a, i, t, -q);
        add_row(U, i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), num(a(t, j)).get_mpz_t(), p.get_mpz_t());
        add_col(a, j, t, -q);
        add_col(V, j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // Divisibility: fold an offending row into row t.
      bool fixed = true;
      for (std::size_t i = t + 1; i < r && fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(num(a(i, j)).get_mpz_t(), p.get_mpz_t())) {
            add_row(a, t, i, 1);
            add_row(U, t, i, 1);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < r; ++j) U(t, j) = -U(t, j);
    }
  }
  return {U, a, V};
}

RationalMatrix adapted_basis(const RationalMatrix& b) {
  if (b.cols() == 0) return RationalMatrix::identity(b.rows());
  RationalMatrix bi = b * Rational(b.common_denominator());
  SmithForm s = smith_normal_form(bi);
  return s.U.inverse();
}

RationalMatrix saturate(const RationalMatrix& b) {
  const std::size_t k = b.rank();
  if (k == 0) return RationalMatrix(b.rows(), 0);
  RationalMatrix p = adapted_basis(b);
  return p.block(0, 0, b.rows(), k);
}

RationalMatrix lattice_basis(const RationalMatrix& g) {
  if (!g.is_integer()) throw PreconditionError("lattice_basis: generators must be integer");
  if (g.cols() == 0 || g.is_zero()) return RationalMatrix(g.rows(), 0);
  SmithForm s = smith_normal_form(g);
  const std::size_t k = g.rank();
  // g = U^{-1} D V^{-1}, so the lattice is U^{-1} D Z^s.
  return (s.U.inverse() * s.D).block(0, 0, g.rows(), k);
}

bool is_unimodular(const RationalMatrix& m) {
  if (!m.is_square() || !m.is_integer()) return false;
  Rational d = m.determinant();
  return d == 1 || d == -1;
}

}  // namespace nilrigid::exact
