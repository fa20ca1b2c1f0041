#include "nilrigid/nil/algebra.hpp"

#include <algorithm>

namespace nilrigid::nil {

namespace {

Vec zero_vec(std::size_t d) { return Vec(d); }

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

}  // namespace

NilAlgebra::NilAlgebra(std::size_t dim, const std::vector<BracketEntry>& brackets, std::optional<int> declared_class)
    : dim_(dim) {
  if (dim == 0) throw PreconditionError("NilAlgebra: dimension must be positive");
  table_.assign(dim * dim, zero_vec(dim));
  std::vector<bool> set(dim * dim, false);
  for (const auto& b : brackets) {
    if (b.i >= dim || b.j >= dim) throw PreconditionError("NilAlgebra: bracket index out of range");
    Vec v = zero_vec(dim);
    for (const auto& [k, c] : b.terms) {
      if (k >= dim) throw PreconditionError("NilAlgebra: bracket index out of range");
      v[k] += c;
    }
    if (b.i == b.j) {
      if (!is_zero_vec(v)) throw PreconditionError("NilAlgebra: [e_i, e_i] must vanish");
      continue;
    }
    Vec neg = v;
    for (auto& q : neg) q = -q;
    const std::size_t ij = b.i * dim + b.j, ji = b.j * dim + b.i;
    if ((set[ij] && table_[ij] != v) || (set[ji] && table_[ji] != neg))
      throw PreconditionError("NilAlgebra: inconsistent antisymmetric bracket entries");
    table_[ij] = v;
    table_[ji] = neg;
    set[ij] = set[ji] = true;
  }
  finish(declared_class);
}

void NilAlgebra::finish(std::optional<int> declared_class) {
  // Jacobi on basis triples.
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vec ei = zero_vec(dim_), ej = zero_vec(dim_), ek = zero_vec(dim_);
        ei[i] = ej[j] = ek[k] = 1;
        Vec a = bracket(ei, structure(j, k));
        Vec b = bracket(ej, structure(k, i));
        Vec c = bracket(ek, structure(i, j));
        for (std::size_t t = 0; t < dim_; ++t)
          if (a[t] + b[t] + c[t] != 0)
            throw PreconditionError("NilAlgebra: Jacobi identity fails for basis triple (" + std::to_string(i + 1) +
                                    ", " + std::to_string(j + 1) + ", " + std::to_string(k + 1) + ")");
      }
  // Nilpotency class from the lower central series.
  RationalMatrix cur = RationalMatrix::identity(dim_);
  int c = 0;
  for (;;) {
    ++c;
    RationalMatrix next = brackets_of(RationalMatrix::identity(dim_), cur);
    next = next.cols() ? next.column_basis() : next;
    if (next.cols() == 0) break;
    if (next.cols() == cur.cols()) throw PreconditionError("NilAlgebra: structure constants are not nilpotent");
    cur = next;
  }
  class_ = c;
  if (declared_class && *declared_class != class_)
    throw PreconditionError("NilAlgebra: declared class " + std::to_string(*declared_class) +
                            " but the lower central series gives " + std::to_string(class_));
}

NilAlgebra NilAlgebra::abelian(std::size_t dim) { return NilAlgebra(dim, {}); }

NilAlgebra NilAlgebra::heisenberg(std::size_t n, const Rational& scale) {
  std::vector<BracketEntry> b;
  for (std::size_t i = 0; i < n; ++i) b.push_back({i, n + i, {{2 * n, scale}}});
  return NilAlgebra(2 * n + 1, b);
}

NilAlgebra NilAlgebra::direct_sum(const NilAlgebra& a, const NilAlgebra& b) {
  std::vector<BracketEntry> e = a.entries();
  for (auto x : b.entries()) {
    x.i += a.dim();
    x.j += a.dim();
    for (auto& t : x.terms) t.first += a.dim();
    e.push_back(x);
  }
  return NilAlgebra(a.dim() + b.dim(), e);
}

Vec NilAlgebra::bracket(const Vec& u, const Vec& v) const {
  if (u.size() != dim_ || v.size() != dim_) throw PreconditionError("bracket: dimension mismatch");
  Vec r = zero_vec(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j] == 0 || i == j) continue;
      const Vec& s = table_[i * dim_ + j];
      Rational f = u[i] * v[j];
      for (std::size_t k = 0; k < dim_; ++k)
        if (s[k] != 0) r[k] += f * s[k];
    }
  }
  return r;
}

RationalMatrix NilAlgebra::ad(const Vec& u) const {
  RationalMatrix m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec ej = zero_vec(dim_);
    ej[j] = 1;
    m.set_col(j, bracket(u, ej));
  }
  return m;
}

RationalMatrix NilAlgebra::brackets_of(const RationalMatrix& b, const RationalMatrix& c) const {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < b.cols(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) {
      Vec v = bracket(b.col(i), c.col(j));
      if (!is_zero_vec(v)) cols.push_back(std::move(v));
    }
  return RationalMatrix::from_columns(cols, dim_);
}

bool NilAlgebra::has_malcev_order() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      const Vec& s = structure(i, j);
      for (std::size_t k = 0; k <= std::max(i, j); ++k)
        if (s[k] != 0) return false;
    }
  return true;
}

std::vector<BracketEntry> NilAlgebra::entries() const {
  std::vector<BracketEntry> out;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Vec& s = structure(i, j);
      BracketEntry e{i, j, {}};
      for (std::size_t k = 0; k < dim_; ++k)
        if (s[k] != 0) e.terms.emplace_back(k, s[k]);
      if (!e.terms.empty()) out.push_back(std::move(e));
    }
  return out;
}

// ---------------- RationalSubspace ----------------

RationalSubspace::RationalSubspace(std::size_t ambient_dim, RationalMatrix basis)
    : ambient_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.cols() == 0) basis_ = RationalMatrix(ambient_dim, 0);
  if (basis_.rows() != ambient_dim) throw PreconditionError("RationalSubspace: basis has wrong row count");
  if (basis_.cols() && basis_.rank() != basis_.cols())
    throw PreconditionError("RationalSubspace: basis is not of full column rank");
}

RationalSubspace RationalSubspace::span(std::size_t d, const RationalMatrix& generators) {
  if (generators.cols() == 0) return zero(d);
  return {d, generators.column_basis()};
}

bool RationalSubspace::contains(const Vec& v) const {
  return exact::contained_in(RationalMatrix::column(v), basis_);
}

bool RationalSubspace::contains(const RationalSubspace& s) const { return exact::contained_in(s.basis_, basis_); }

RationalSubspace RationalSubspace::sum(const RationalSubspace& o) const {
  return span(ambient_, basis_.hstack(o.basis_));
}

RationalSubspace RationalSubspace::intersect(const RationalSubspace& o) const {
  return span(ambient_, exact::intersect_subspaces(basis_, o.basis_));
}

bool RationalSubspace::invariant_under(const RationalMatrix& m) const {
  if (dim() == 0) return true;
  return exact::contained_in(m * basis_, basis_);
}

std::vector<RationalSubspace> lower_central_series(const NilAlgebra& alg) {
  const std::size_t d = alg.dim();
  std::vector<RationalSubspace> out{RationalSubspace::whole(d)};
  while (out.back().dim() > 0) {
    RationalMatrix b = alg.brackets_of(RationalMatrix::identity(d), out.back().basis());
    out.push_back(RationalSubspace::span(d, b));
  }
  return out;
}

RationalSubspace center(const NilAlgebra& alg) {
  const std::size_t d = alg.dim();
  // v -> ([v, e_1]; ...; [v, e_d]) stacked.
  RationalMatrix m(d * d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec& s = alg.structure(i, j);  // [e_i, e_j]
      for (std::size_t k = 0; k < d; ++k) m(j * d + k, i) = s[k];
    }
  RationalMatrix k = m.kernel();
  return RationalSubspace(d, k);
}

bool is_subalgebra(const NilAlgebra& alg, const RationalSubspace& s) {
  if (s.dim() == 0) return true;
  return exact::contained_in(alg.brackets_of(s.basis(), s.basis()), s.basis());
}

bool is_ideal(const NilAlgebra& alg, const RationalSubspace& s) {
  if (s.dim() == 0) return true;
  RationalMatrix b = alg.brackets_of(RationalMatrix::identity(alg.dim()), s.basis());
  return exact::contained_in(b, s.basis());
}

bool is_rational_subspace(const RationalSubspace& s) { return s.basis().cols() == 0 || s.basis().rank() == s.dim(); }

RationalityResult is_rational_subspace(const exact::IntervalMatrix& basis, const Integer& denominator_bound) {
  using exact::Interval;
  const std::size_t d = basis.rows(), k = basis.cols();
  RationalityResult res;
  res.max_denominator = 1;
  if (k == 0) {
    res.verdict = Rationality::Rational;
    res.witness = RationalSubspace::zero(d);
    return res;
  }
  // Work with the transpose: rows are basis vectors; interval Gauss-Jordan.
  exact::IntervalMatrix m = basis.transpose();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < k; ++c) {
    std::size_t best = k;
    exact::BigFloat bestv(m.precision());
    for (std::size_t i = r; i < k; ++i) {
      if (m(i, c).contains_zero()) continue;
      exact::BigFloat v = abs(m(i, c).mid());
      if (best == k || v > bestv) {
        best = i;
        bestv = v;
      }
    }
    if (best == k) continue;
    for (std::size_t j = 0; j < d; ++j) std::swap(m(best, j), m(r, j));
    Interval piv = m(r, c);
    for (std::size_t j = 0; j < d; ++j) m(r, j) = m(r, j) / piv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == r) continue;
      Interval f = m(i, c);
      for (std::size_t j = 0; j < d; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  if (r < k) throw IndeterminateError("is_rational_subspace: numerical rank below column count");
  Rational width_limit = Rational(1) / (Rational(denominator_bound) * denominator_bound * 2);
  RationalMatrix exact_rows(k, d);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Interval& e = m(i, j);
      Rational lo = e.lo().to_rational(), hi = e.hi().to_rational();
      Rational q = exact::simplest_between(lo, hi);
      if (q.get_den() > denominator_bound) {
        res.verdict = Rationality::NotRational;
        res.max_denominator = q.get_den();
        return res;
      }
      if (hi - lo > width_limit) throw IndeterminateError("is_rational_subspace: enclosures too wide to decide");
      exact_rows(i, j) = q;
      if (q.get_den() > res.max_denominator) res.max_denominator = q.get_den();
    }
  res.verdict = Rationality::Rational;
  res.witness = RationalSubspace(d, exact_rows.transpose());
  return res;
}

Quotient quotient(const NilAlgebra& alg, const RationalSubspace& ideal) {
  const std::size_t d = alg.dim();
  if (ideal.ambient_dim() != d) throw PreconditionError("quotient: dimension mismatch");
  if (!is_ideal(alg, ideal)) throw PreconditionError("quotient: subspace is not an ideal");
  if (!is_rational_subspace(ideal)) throw PreconditionError("quotient: subspace is not rational");
  const std::size_t k = ideal.dim();
  RationalMatrix p = exact::adapted_basis(ideal.basis());
  RationalMatrix pinv = p.inverse();
  RationalMatrix projection = pinv.block(k, 0, d - k, d);
  RationalMatrix section = p.block(0, k, d, d - k);
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < d - k; ++a)
    for (std::size_t b = a + 1; b < d - k; ++b) {
      Vec v = projection * alg.bracket(section.col(a), section.col(b));
      BracketEntry e{a, b, {}};
      for (std::size_t t = 0; t < v.size(); ++t)
        if (v[t] != 0) e.terms.emplace_back(t, v[t]);
      if (!e.terms.empty()) entries.push_back(std::move(e));
    }
  if (d == k) throw PreconditionError("quotient: ideal is the whole algebra");
  return {NilAlgebra(d - k, entries), projection, section};
}

}  // namespace nilrigid::nil
