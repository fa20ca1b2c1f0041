#include "nilrigid/exact/number_field.hpp"

#include "nilrigid/exact/factor.hpp"

namespace nilrigid::exact {

NumberField::NumberField(const IntPolynomial& f) : f_(primitive_part(f)), fr_(make_monic(to_rational(f))) {
  if (f_.degree() < 1) throw PreconditionError("NumberField: modulus must have positive degree");
  n_ = static_cast<std::size_t>(f_.degree());
  Elem p(n_);
  p[n_ - 1] = 1;
  for (std::size_t k = n_; k + 1 < 2 * n_; ++k) {
    // p <- x * p mod f
    Elem q(n_);
    for (std::size_t i = 0; i + 1 < n_; ++i) q[i + 1] = p[i];
    const Rational top = p[n_ - 1];
    if (top != 0)
      for (std::size_t i = 0; i < n_; ++i) q[i] -= top * fr_[i];
    high_powers_.push_back(q);
    p = std::move(q);
  }
}

NumberField::Elem NumberField::one() const { return from_rational(1); }

NumberField::Elem NumberField::from_rational(const Rational& q) const {
  Elem e(n_);
  e[0] = q;
  return e;
}

NumberField::Elem NumberField::generator() const {
  if (n_ == 1) return from_rational(-fr_[0]);
  Elem e(n_);
  e[1] = 1;
  return e;
}

NumberField::Elem NumberField::add(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] + b[i];
  return r;
}

NumberField::Elem NumberField::sub(const Elem& a, const Elem& b) const {
  Elem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] - b[i];
  return r;
}

NumberField::Elem NumberField::neg(const Elem& a) const {
  Elem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = -a[i];
  return r;
}

NumberField::Elem NumberField::scale(const Elem& a, const Rational& q) const {
  Elem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = a[i] * q;
  return r;
}

NumberField::Elem NumberField::mul(const Elem& a, const Elem& b) const {
  std::vector<Rational> full(2 * n_ - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (b[j] != 0) full[i + j] += a[i] * b[j];
  }
  Elem r(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n_));
  for (std::size_t k = n_; k < full.size(); ++k) {
    if (full[k] == 0) continue;
    const Elem& hp = high_powers_[k - n_];
    for (std::size_t i = 0; i < n_; ++i) r[i] += full[k] * hp[i];
  }
  return r;
}

NumberField::Elem NumberField::inv(const Elem& a) const {
  if (is_zero(a)) throw PreconditionError("NumberField: inverse of zero");
  ExtendedGcd g = extended_gcd(RatPolynomial(a), fr_);
  if (g.g.degree() != 0) throw PreconditionError("NumberField: modulus is not irreducible");
  RatPolynomial s = g.s % fr_;
  Elem r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i] = s[i];
  return r;
}

NumberField::Elem NumberField::pow(const Elem& a, long long e) const {
  Elem base = e < 0 ? inv(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Elem r = one();
  while (k) {
    if (k & 1ULL) r = mul(r, base);
    k >>= 1ULL;
    if (k) base = mul(base, base);
  }
  return r;
}

bool NumberField::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (c != 0) return false;
  return true;
}

bool NumberField::is_rational(const Elem& a) const {
  for (std::size_t i = 1; i < n_; ++i)
    if (a[i] != 0) return false;
  return true;
}

RationalMatrix NumberField::multiplication_matrix(const Elem& a) const {
  RationalMatrix m(n_, n_);
  for (std::size_t j = 0; j < n_; ++j) {
    Elem e(n_);
    e[j] = 1;
    Elem col = mul(a, e);
    for (std::size_t i = 0; i < n_; ++i) m(i, j) = col[i];
  }
  return m;
}

IntPolynomial NumberField::minimal_polynomial(const Elem& a) const {
  IntPolynomial cp = charpoly(multiplication_matrix(a));
  // The characteristic polynomial is a power of the minimal polynomial.
  return squarefree_part(cp);
}

ComplexInterval NumberField::embed(const Elem& a, const ComplexInterval& z) const {
  const long prec = z.re.precision();
  ComplexInterval acc{Interval(prec), Interval(prec)};
  for (std::size_t k = n_; k-- > 0;) {
    acc = acc * z;
    acc.re += Interval(a[k], prec);
  }
  return acc;
}

// ---------------- KMatrix ----------------

KMatrix::KMatrix(std::shared_ptr<const NumberField> K, std::size_t rows, std::size_t cols)
    : K_(std::move(K)), rows_(rows), cols_(cols), data_(rows * cols, K_->zero()) {}

KMatrix KMatrix::from_rational(std::shared_ptr<const NumberField> K, const RationalMatrix& m) {
  KMatrix r(K, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = K->from_rational(m(i, j));
  return r;
}

KMatrix KMatrix::identity(std::shared_ptr<const NumberField> K, std::size_t n) {
  KMatrix r(K, n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = K->one();
  return r;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("KMatrix product shape mismatch");
  KMatrix r(K_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(i, k);
      if (K_->is_zero(a)) continue;
      const bool rat = K_->is_rational(a);
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const auto& b = o(k, j);
        if (K_->is_zero(b)) continue;
        r(i, j) = K_->add(r(i, j), rat ? K_->scale(b, a[0]) : K_->mul(a, b));
      }
    }
  return r;
}

KMatrix KMatrix::operator-(const KMatrix& o) const {
  KMatrix r(K_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = K_->sub(data_[k], o.data_[k]);
  return r;
}

bool KMatrix::is_zero() const {
  for (const auto& e : data_)
    if (!K_->is_zero(e)) return false;
  return true;
}

KMatrix KMatrix::rref(std::vector<std::size_t>* pivots) const {
  KMatrix m = *this;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && K_->is_zero(m(p, c))) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(r, j));
    auto inv = K_->inv(m(r, c));
    for (std::size_t j = c; j < cols_; ++j)
      if (!K_->is_zero(m(r, j))) m(r, j) = K_->mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || K_->is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (std::size_t j = c; j < cols_; ++j)
        if (!K_->is_zero(m(r, j))) m(i, j) = K_->sub(m(i, j), K_->mul(f, m(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t KMatrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

KMatrix KMatrix::kernel() const {
  std::vector<std::size_t> piv;
  KMatrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : piv) is_pivot[p] = true;
  std::size_t nfree = cols_ - piv.size();
  KMatrix k(K_, cols_, nfree);
  std::size_t col = 0;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    k(f, col) = K_->one();
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], col) = K_->neg(r(i, f));
    ++col;
  }
  return k;
}

KMatrix KMatrix::pow(unsigned e) const {
  KMatrix r = identity(K_, rows_);
  KMatrix b = *this;
  while (e) {
    if (e & 1U) r = r * b;
    e >>= 1U;
    if (e) b = b * b;
  }
  return r;
}

KMatrix KMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  KMatrix b(K_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

KMatrix KMatrix::solve(const KMatrix& rhs) const {
  KMatrix aug(K_, rows_, cols_ + rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < rhs.cols_; ++j) aug(i, cols_ + j) = rhs(i, j);
  }
  std::vector<std::size_t> piv;
  KMatrix r = aug.rref(&piv);
  KMatrix x(K_, cols_, rhs.cols_);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] >= cols_) throw PreconditionError("KMatrix::solve: inconsistent system");
    for (std::size_t j = 0; j < rhs.cols_; ++j) x(piv[k], j) = r(k, cols_ + j);
  }
  return x;
}

NumberField::Elem KMatrix::trace() const {
  auto t = K_->zero();
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = K_->add(t, (*this)(i, i));
  return t;
}

}  // namespace nilrigid::exact
