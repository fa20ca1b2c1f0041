#include "nilrigid/action/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "nilrigid/exact/factor.hpp"

namespace nilrigid::action {

using exact::ComplexInterval;
using exact::KMatrix;
using exact::RatPolynomial;

namespace {

KMatrix shifted(const std::shared_ptr<const NumberField>& K, const RationalMatrix& m) {
  KMatrix r = KMatrix::from_rational(K, m);
  auto g = K->generator();
  for (std::size_t i = 0; i < m.rows(); ++i) r(i, i) = K->sub(r(i, i), g);
  return r;
}

IntervalMatrix hstack(const std::vector<const IntervalMatrix*>& parts, std::size_t rows, long prec) {
  std::size_t cols = 0;
  for (auto* p : parts) cols += p->cols();
  IntervalMatrix out(rows, cols, prec);
  std::size_t c0 = 0;
  for (auto* p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p->cols(); ++j) out(i, c0 + j) = (*p)(i, j);
    c0 += p->cols();
  }
  return out;
}

// Rational basis as an interval matrix.
IntervalMatrix to_intervals(const RationalMatrix& m, long prec) { return IntervalMatrix::from_rational(m, prec); }

AlgebraicEnclosure rational_root(const Rational& q, long bits) {
  AlgebraicEnclosure e;
  e.minimal_polynomial = IntPolynomial({Integer(-q.get_num()), Integer(q.get_den())});
  e.center_re = q;
  e.center_im = 0;
  e.radius = 0;
  e.precision_bits = bits;
  e.real = true;
  return e;
}

bool boxes_overlap(const ComplexInterval& a, const ComplexInterval& b) {
  return a.re.overlaps(b.re) && a.im.overlaps(b.im);
}

SubspaceEnclosure combine(const LyapunovSpectrum& s, const std::vector<std::size_t>& entries) {
  const std::size_t d = s.action.dim();
  std::vector<const IntervalMatrix*> parts;
  bool all_exact = true;
  RationalMatrix exact_cols(d, 0);
  for (auto e : entries) {
    parts.push_back(&s.entries[e].subspace.basis);
    if (s.entries[e].subspace.exact)
      exact_cols = exact_cols.hstack(s.entries[e].subspace.exact->basis());
    else
      all_exact = false;
  }
  SubspaceEnclosure out;
  out.basis = hstack(parts, d, s.precision);
  if (all_exact) {
    out.exact = RationalSubspace::span(d, exact_cols);
    // Keep the interval basis aligned with the exact one.
    out.basis = to_intervals(out.exact->basis(), s.precision);
  }
  return out;
}

}  // namespace

std::size_t PrimaryComponent::conjugate_of(std::size_t k) const {
  const auto& e = conjugates[k];
  if (e.real || e.center_im == 0) return k;
  for (std::size_t j = 0; j < conjugates.size(); ++j)
    if (conjugates[j].center_re == e.center_re && conjugates[j].center_im == -e.center_im) return j;
  throw IndeterminateError("conjugate_of: complex conjugate enclosure not found");
}

AlgebraicEnclosure identify_conjugate(const NumberField& K, const NumberField::Elem& a,
                                      const AlgebraicEnclosure& theta, long bits) {
  if (K.is_rational(a)) return rational_root(a[0], bits);
  IntPolynomial g = K.minimal_polynomial(a);
  for (long prec = bits; prec <= exact::kMaxPrecision; prec *= 2) {
    AlgebraicEnclosure t = theta.precision_bits >= prec ? theta : exact::refine(theta, prec);
    ComplexInterval v = K.embed(a, t.box(prec + 64));
    auto roots = exact::isolate_roots(g, prec);
    const AlgebraicEnclosure* hit = nullptr;
    int meeting = 0;
    for (const auto& r : roots)
      if (boxes_overlap(r.box(prec + 64), v)) {
        ++meeting;
        hit = &r;
      }
    if (meeting == 1) return *hit;
  }
  throw IndeterminateError("identify_conjugate: conjugate not separated at maximum precision");
}

GenericDecomposition generic_decomposition(const std::vector<RationalMatrix>& gens, long bits, std::uint64_t seed) {
  if (gens.empty()) throw PreconditionError("generic_decomposition: no generators");
  const std::size_t d = gens[0].rows();
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kGenericAttempts; ++attempt) {
    GenericDecomposition out;
    out.attempts = attempt + 1;
    out.coefficients.resize(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (attempt == 0) {
        out.coefficients[i] = static_cast<long long>(i) + 1;
      } else {
        long long bound = 3 + attempt;
        std::uniform_int_distribution<long long> dist(1, bound);
        out.coefficients[i] = dist(rng) * ((rng() & 1) ? 1 : -1);
      }
    }
    RationalMatrix c(d, d);
    for (std::size_t i = 0; i < gens.size(); ++i) c += gens[i] * Rational(static_cast<long>(out.coefficients[i]));
    out.element = c;
    exact::Factorization fac = exact::factor_rational(exact::charpoly(c));
    bool ok = true;
    for (const auto& term : fac.terms) {
      PrimaryComponent comp;
      comp.factor = term.factor;
      comp.multiplicity = term.multiplicity;
      RationalMatrix fc = exact::evaluate(exact::to_rational(term.factor), c).pow(term.multiplicity);
      comp.basis = fc.kernel();
      auto K = std::make_shared<const NumberField>(term.factor);
      comp.field = K;
      const std::size_t m = term.multiplicity;
      if (comp.basis.cols() != m * K->degree())
        throw PreconditionError("generic_decomposition: generalized kernel has unexpected dimension");
      RationalMatrix cv = restrict_to(c, comp.basis);
      KMatrix e = shifted(K, cv).pow(static_cast<unsigned>(m)).kernel();
      if (e.cols() != m) throw PreconditionError("generic_decomposition: eigenspace dimension mismatch");
      for (const auto& g : gens) {
        KMatrix x = e.solve(KMatrix::from_rational(K, restrict_to(g, comp.basis)) * e);
        auto mu = K->scale(x.trace(), Rational(1) / Rational(static_cast<long>(m)));
        KMatrix y = x;
        for (std::size_t i = 0; i < m; ++i) y(i, i) = K->sub(y(i, i), mu);
        if (!y.pow(static_cast<unsigned>(m)).is_zero()) {
          ok = false;
          break;
        }
        comp.eigenvalue.push_back(mu);
      }
      if (!ok) break;
      comp.conjugates = exact::algebraic_roots(term.factor, bits);
      out.components.push_back(std::move(comp));
    }
    if (ok) return out;
  }
  throw ExhaustedError("generic_decomposition: every generic combination had an eigenvalue collision");
}

SubspaceEnclosure eigen_piece(const GenericDecomposition& g, std::size_t c, const std::vector<std::size_t>& which,
                              const RationalMatrix& within, long bits) {
  const PrimaryComponent& comp = g.components.at(c);
  const std::size_t d = g.element.rows();
  SubspaceEnclosure out;
  if (within.cols() == 0) {
    out.basis = IntervalMatrix(d, 0, bits);
    out.exact = RationalSubspace::zero(d);
    return out;
  }
  if (which.size() == comp.degree()) {
    out.basis = to_intervals(within, bits);
    out.exact = RationalSubspace(d, within);
    return out;
  }
  const auto& K = comp.field;
  RationalMatrix cw = restrict_to(g.element, within);
  std::size_t m = within.cols() / comp.degree();
  KMatrix e = shifted(K, cw).pow(static_cast<unsigned>(m)).kernel();
  std::vector<std::vector<Interval>> cols;
  for (auto k : which) {
    const AlgebraicEnclosure& th = comp.conjugates[k];
    bool real = th.real || th.center_im == 0;
    if (!real && th.center_im < 0) continue;  // its conjugate supplies Re and Im
    AlgebraicEnclosure t = th.precision_bits >= bits ? th : exact::refine(th, bits);
    ComplexInterval z = t.box(bits + 64);
    for (std::size_t j = 0; j < e.cols(); ++j) {
      std::vector<ComplexInterval> v;
      for (std::size_t i = 0; i < e.rows(); ++i) v.push_back(K->embed(e(i, j), z));
      std::vector<Interval> re(d, Interval(Rational(0), bits)), im(d, Interval(Rational(0), bits));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t i = 0; i < within.cols(); ++i) {
          if (within(r, i) == 0) continue;
          Interval w(within(r, i), bits);
          re[r] += w * v[i].re;
          im[r] += w * v[i].im;
        }
      cols.push_back(std::move(re));
      if (!real) cols.push_back(std::move(im));
    }
  }
  out.basis = IntervalMatrix(d, cols.size(), bits);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t r = 0; r < d; ++r) out.basis(r, j) = cols[j][r];
  return out;
}

std::size_t LyapunovSpectrum::class_dim(std::size_t c) const {
  std::size_t n = 0;
  for (auto e : classes.at(c).entries) n += entries[e].dim();
  return n;
}

SubspaceEnclosure LyapunovSpectrum::class_subspace(std::size_t c) const { return combine(*this, classes.at(c).entries); }

std::size_t LyapunovSpectrum::class_of(std::size_t entry) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (auto e : classes[c].entries)
      if (e == entry) return c;
  throw PreconditionError("class_of: entry not found");
}

bool positively_proportional(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  const std::size_t r = a.size();
  if (b.size() != r || r == 0) throw PreconditionError("positively_proportional: size mismatch");
  long prec = a[0].precision();
  IntervalMatrix m(2, r, prec);
  for (std::size_t i = 0; i < r; ++i) {
    m(0, i) = a[i];
    m(1, i) = b[i];
  }
  if (exact::numeric_rank(m, kProportionalityTol) != 1) return false;
  std::size_t best = 0;
  for (std::size_t i = 1; i < r; ++i)
    if (abs(a[i].mid()) > abs(a[best].mid())) best = i;
  if (a[best].positive()) return b[best].positive();
  if (a[best].negative()) return b[best].negative();
  throw IndeterminateError("positively_proportional: sign undecided");
}

LyapunovSpectrum lyapunov_spectrum(const AutoAction& a, long bits) {
  require_valid(a);
  LyapunovSpectrum s;
  s.action = a;
  s.precision = bits;
  s.generic = generic_decomposition(a.generators, bits);
  const std::size_t r = a.rank();
  for (std::size_t c = 0; c < s.generic.components.size(); ++c) {
    const PrimaryComponent& comp = s.generic.components[c];
    const std::size_t n = comp.degree();
    std::vector<std::vector<Interval>> chi(n);
    std::vector<std::vector<bool>> zero(n);
    std::vector<std::vector<AlgebraicEnclosure>> data(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < r; ++i) {
        AlgebraicEnclosure e = identify_conjugate(*comp.field, comp.eigenvalue[i], comp.conjugates[k], bits);
        bool z = exact::on_unit_circle(e);
        zero[k].push_back(z);
        chi[k].push_back(z ? Interval(Rational(0), bits) : exact::certified_abs_log(e, bits));
        data[k].push_back(std::move(e));
      }
    auto same = [&](std::size_t x, std::size_t y) {
      for (std::size_t i = 0; i < r; ++i) {
        if (zero[x][i] != zero[y][i]) return false;
        if (!zero[x][i] && !chi[x][i].overlaps(chi[y][i])) return false;
      }
      return true;
    };
    std::vector<bool> used(n, false);
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      std::vector<std::size_t> group;
      for (std::size_t j = k; j < n; ++j) {
        if (used[j] || !same(k, j)) continue;
        for (std::size_t x : {j, comp.conjugate_of(j)})
          if (!used[x]) {
            used[x] = true;
            group.push_back(x);
          }
      }
      std::sort(group.begin(), group.end());
      LyapunovEntry e;
      e.chi = chi[k];
      e.zero = std::all_of(zero[k].begin(), zero[k].end(), [](bool b) { return b; });
      e.multiplicity = comp.multiplicity;
      e.count = group.size();
      e.component = c;
      e.conjugates = group;
      e.eigen_data = data[group[0]];
      e.subspace = eigen_piece(s.generic, c, group, comp.basis, bits);
      s.entries.push_back(std::move(e));
    }
  }
  // Coarse classes: zero entries together; others by positive proportionality.
  std::vector<std::size_t> parent(s.entries.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t x = 0; x < s.entries.size(); ++x)
    for (std::size_t y = x + 1; y < s.entries.size(); ++y) {
      const auto& ex = s.entries[x];
      const auto& ey = s.entries[y];
      bool join = (ex.zero && ey.zero) || (!ex.zero && !ey.zero && positively_proportional(ex.chi, ey.chi));
      if (join) parent[find(y)] = find(x);
    }
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t x = 0; x < s.entries.size(); ++x) {
    std::size_t rt = find(x);
    auto it = root_to_class.find(rt);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(rt, s.classes.size()).first;
      s.classes.push_back({{}, s.entries[x].zero});
    }
    s.classes[it->second].entries.push_back(x);
  }
  return s;
}

Interval chi_at(const LyapunovSpectrum& s, std::size_t entry, const IntVec& n, long bits) {
  const LyapunovEntry& e = s.entries.at(entry);
  if (n.size() != s.action.rank()) throw PreconditionError("chi_at: wrong exponent length");
  if (e.zero) return Interval(Rational(0), std::max(bits, s.precision));
  if (bits == 0) {
    Interval acc(Rational(0), s.precision);
    for (std::size_t i = 0; i < n.size(); ++i)
      if (n[i] != 0) acc += Interval(Rational(static_cast<long>(n[i])), s.precision) * e.chi[i];
    if (!acc.contains_zero()) return acc;
    bits = s.precision;
  }
  // Exact path: the eigenvalue of alpha^n is an element of K.
  const PrimaryComponent& comp = s.generic.components[e.component];
  const NumberField& K = *comp.field;
  NumberField::Elem eta = K.one();
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0) eta = K.mul(eta, K.pow(comp.eigenvalue[i], n[i]));
  AlgebraicEnclosure z = identify_conjugate(K, eta, comp.conjugates[e.conjugates[0]], bits);
  if (exact::on_unit_circle(z)) return Interval(Rational(0), bits);
  return exact::certified_abs_log(z, bits);
}

int chi_sign(const LyapunovSpectrum& s, std::size_t entry, const IntVec& n) {
  for (long bits = 0;;) {
    Interval v = chi_at(s, entry, n, bits);
    if (v.lo().sign() == 0 && v.hi().sign() == 0) return 0;
    if (v.positive()) return 1;
    if (v.negative()) return -1;
    bits = bits == 0 ? 2 * s.precision : 2 * bits;
    if (bits > exact::kMaxPrecision) throw IndeterminateError("chi_sign: exponent straddles 0 at maximum precision");
  }
}

SubspaceEnclosure unstable_subalgebra(const LyapunovSpectrum& s, const IntVec& n) {
  std::vector<std::size_t> sel;
  for (std::size_t e = 0; e < s.entries.size(); ++e)
    if (chi_sign(s, e, n) > 0) sel.push_back(e);
  return combine(s, sel);
}

SubspaceEnclosure stable_subalgebra(const LyapunovSpectrum& s, const IntVec& n) {
  std::vector<std::size_t> sel;
  for (std::size_t e = 0; e < s.entries.size(); ++e)
    if (chi_sign(s, e, n) < 0) sel.push_back(e);
  return combine(s, sel);
}

Interval haar_entropy(const LyapunovSpectrum& s, const IntVec& n) {
  Interval h(Rational(0), s.precision);
  for (std::size_t e = 0; e < s.entries.size(); ++e)
    if (chi_sign(s, e, n) > 0)
      h += Interval(Rational(static_cast<long>(s.entries[e].dim())), s.precision) * chi_at(s, e, n);
  return h;
}

std::vector<Interval> exponent_sum(const LyapunovSpectrum& s) {
  std::vector<Interval> out(s.action.rank(), Interval(Rational(0), s.precision));
  for (const auto& e : s.entries)
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += Interval(Rational(static_cast<long>(e.dim())), s.precision) * e.chi[i];
  return out;
}

std::vector<std::string> check_grading(const LyapunovSpectrum& s) {
  std::vector<std::string> failures;
  const std::size_t d = s.action.dim();
  const long prec = s.precision;
  auto brackets = s.action.algebra.entries();
  if (brackets.empty()) return failures;
  auto bracket = [&](const IntervalMatrix& A, std::size_t a, const IntervalMatrix& B, std::size_t b) {
    std::vector<Interval> w(d, Interval(Rational(0), prec));
    for (const auto& br : brackets) {
      Interval coef = A(br.i, a) * B(br.j, b) - A(br.j, a) * B(br.i, b);
      for (const auto& [k, c] : br.terms) w[k] += Interval(c, prec) * coef;
    }
    return w;
  };
  const std::size_t ne = s.entries.size();
  for (std::size_t x = 0; x < ne; ++x)
    for (std::size_t y = x; y < ne; ++y) {
      const auto& ex = s.entries[x];
      const auto& ey = s.entries[y];
      std::vector<std::vector<Interval>> ws;
      for (std::size_t a = 0; a < ex.dim(); ++a)
        for (std::size_t b = 0; b < ey.dim(); ++b) ws.push_back(bracket(ex.subspace.basis, a, ey.subspace.basis, b));
      std::vector<std::size_t> target;
      for (std::size_t z = 0; z < ne; ++z) {
        bool match = true;
        for (std::size_t i = 0; i < ex.chi.size() && match; ++i)
          match = (ex.chi[i] + ey.chi[i]).overlaps(s.entries[z].chi[i]);
        if (match) target.push_back(z);
      }
      std::string label = "entries " + std::to_string(x) + ", " + std::to_string(y);
      if (target.empty()) {
        for (const auto& w : ws)
          for (const auto& c : w)
            if (!c.contains_zero()) {
              failures.push_back(label + ": nonzero bracket with no matching exponent");
              goto next_pair;
            }
        continue;
      }
      {
        SubspaceEnclosure t = combine(s, target);
        IntervalMatrix m(d, t.dim() + ws.size(), prec);
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = 0; j < t.dim(); ++j) m(i, j) = t.basis(i, j);
          for (std::size_t j = 0; j < ws.size(); ++j) m(i, t.dim() + j) = ws[j][i];
        }
        try {
          if (exact::numeric_rank(m, kProportionalityTol) != t.dim())
            failures.push_back(label + ": bracket leaves the target Lyapunov subspace");
        } catch (const IndeterminateError&) {
          failures.push_back(label + ": containment indeterminate");
        }
      }
    next_pair:;
    }
  return failures;
}

}  // namespace nilrigid::action
