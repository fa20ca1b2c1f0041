#include "nilrigid/action/jordan.hpp"

#include "nilrigid/exact/polynomial.hpp"

namespace nilrigid::action {

using exact::RatPolynomial;

RationalMatrix unipotent_log(const RationalMatrix& u) {
  const std::size_t d = u.rows();
  RationalMatrix x = u - RationalMatrix::identity(d);
  RationalMatrix term = x, out(d, d);
  for (std::size_t k = 1; k <= d && !term.is_zero(); ++k) {
    Rational c = Rational((k % 2) ? 1 : -1, static_cast<unsigned long>(k));
    c.canonicalize();
    out += term * c;
    term = term * x;
  }
  if (!term.is_zero()) throw PreconditionError("unipotent_log: matrix is not unipotent");
  return out;
}

RationalMatrix nilpotent_exp(const RationalMatrix& n) {
  const std::size_t d = n.rows();
  RationalMatrix out = RationalMatrix::identity(d), term = RationalMatrix::identity(d);
  for (std::size_t k = 1; k <= d; ++k) {
    term = term * n * Rational(1, static_cast<unsigned long>(k));
    if (term.is_zero()) break;
    out += term;
  }
  return out;
}

JordanParts multiplicative_jordan(const RationalMatrix& m) {
  const std::size_t d = m.rows();
  RatPolynomial p = exact::to_rational(exact::squarefree_part(exact::charpoly(m)));
  RatPolynomial dp = p.derivative();
  RationalMatrix s = m;
  for (int it = 0;; ++it) {
    RationalMatrix ps = exact::evaluate(p, s);
    if (ps.is_zero()) break;
    if (it > 64) throw IndeterminateError("multiplicative_jordan: Newton iteration did not terminate");
    s = s - ps * exact::evaluate(dp, s).inverse();
  }
  RationalMatrix u = s.inverse() * m;
  if (s * u != u * s) throw IndeterminateError("multiplicative_jordan: parts do not commute");
  RationalMatrix x = u - RationalMatrix::identity(d);
  if (!x.pow(static_cast<long long>(d)).is_zero()) throw IndeterminateError("multiplicative_jordan: u is not unipotent");
  return {s, u, unipotent_log(u)};
}

RationalMatrix SemisimpleUnipotentSplit::Z(const IntVec& m) const {
  if (m.size() != Z_generators.size()) throw PreconditionError("Z: wrong exponent length");
  RationalMatrix r = RationalMatrix::identity(Z_generators.empty() ? 0 : Z_generators[0].rows());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) r = r * Z_generators[i].pow(m[i]);
  return r;
}

SemisimpleUnipotentSplit semisimple_unipotent_split(const LyapunovSpectrum& s, std::size_t coarse_class) {
  if (coarse_class >= s.classes.size()) throw PreconditionError("semisimple_unipotent_split: no such class");
  SemisimpleUnipotentSplit out;
  out.coarse_class = coarse_class;
  out.subspace = s.class_subspace(coarse_class);
  for (const auto& g : s.action.generators) {
    JordanParts j = multiplicative_jordan(g);
    out.Z_generators.push_back(j.semisimple);
    out.U_generators.push_back(j.unipotent);
    out.U_logs.push_back(j.nilpotent_log);
  }
  const std::size_t r = out.U_generators.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (!exact::commutator(out.U_generators[i], out.U_generators[j]).is_zero() ||
          !exact::commutator(out.Z_generators[i], out.Z_generators[j]).is_zero() ||
          !exact::commutator(out.Z_generators[i], out.U_generators[j]).is_zero())
        throw IndeterminateError("semisimple_unipotent_split: parts of different generators do not commute");
  return out;
}

RationalMatrix unipotent_real_power(const SemisimpleUnipotentSplit& split, const std::vector<Rational>& q) {
  if (q.size() != split.U_logs.size()) throw PreconditionError("unipotent_real_power: wrong exponent length");
  const std::size_t d = split.U_logs.empty() ? 0 : split.U_logs[0].rows();
  RationalMatrix n(d, d);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] != 0) n += split.U_logs[i] * q[i];
  return nilpotent_exp(n);
}

Eigen::MatrixXd unipotent_real_power(const SemisimpleUnipotentSplit& split, const std::vector<double>& q) {
  if (q.size() != split.U_logs.size()) throw PreconditionError("unipotent_real_power: wrong exponent length");
  const Eigen::Index d = split.U_logs.empty() ? 0 : static_cast<Eigen::Index>(split.U_logs[0].rows());
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index b = 0; b < d; ++b) n(a, b) += q[i] * split.U_logs[i](a, b).get_d();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(d, d), term = out;
  for (Eigen::Index k = 1; k <= d; ++k) {
    term = term * n / static_cast<double>(k);
    out += term;
  }
  return out;
}

SubspaceEnclosure isometric_subspace(const LyapunovSpectrum& s, const SemisimpleUnipotentSplit& split,
                                     const std::vector<Rational>& p) {
  const auto& cls = s.classes.at(split.coarse_class);
  const std::size_t d = s.action.dim();
  if (p.size() != s.action.rank()) throw PreconditionError("isometric_subspace: wrong exponent length");
  for (auto e : cls.entries) {
    Interval v(Rational(0), s.precision);
    for (std::size_t i = 0; i < p.size(); ++i) v += Interval(p[i], s.precision) * s.entries[e].chi[i];
    if (!v.contains_zero()) throw PreconditionError("isometric_subspace: chi(p) is not 0 on the class");
  }
  RationalMatrix np(d, d);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) np += split.U_logs[i] * p[i];
  // ker(exp(N) - Id) = ker N for nilpotent N.
  RationalMatrix ker = np.kernel();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (ker.cols() == 0) break;
    if (!exact::contained_in(split.Z_generators[i] * ker, ker) || !exact::contained_in(split.U_logs[i] * ker, ker))
      throw IndeterminateError("isometric_subspace: kernel is not invariant under Z and U");
  }
  std::vector<SubspaceEnclosure> pieces;
  bool all_exact = true;
  RationalMatrix exact_cols(d, 0);
  std::size_t cols = 0;
  for (auto e : cls.entries) {
    const auto& entry = s.entries[e];
    const auto& comp = s.generic.components[entry.component];
    RationalMatrix w = ker.cols() ? exact::intersect_subspaces(ker, comp.basis) : RationalMatrix(d, 0);
    pieces.push_back(eigen_piece(s.generic, entry.component, entry.conjugates, w, s.precision));
    cols += pieces.back().dim();
    if (pieces.back().exact)
      exact_cols = exact_cols.hstack(pieces.back().exact->basis());
    else
      all_exact = false;
  }
  SubspaceEnclosure out;
  if (all_exact) {
    out.exact = RationalSubspace::span(d, exact_cols);
    out.basis = IntervalMatrix::from_rational(out.exact->basis(), s.precision);
    return out;
  }
  out.basis = IntervalMatrix(d, cols, s.precision);
  std::size_t c0 = 0;
  for (const auto& pc : pieces) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < pc.dim(); ++j) out.basis(i, c0 + j) = pc.basis(i, j);
    c0 += pc.dim();
  }
  return out;
}

}  // namespace nilrigid::action
