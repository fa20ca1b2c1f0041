#include "nilrigid/action/irreducibility.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nilrigid/exact/factor.hpp"
#include "nilrigid/exact/linalg.hpp"

namespace nilrigid::action {

using exact::RatPolynomial;

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Yes:
      return "yes";
    case Decision::No:
      return "no";
    default:
      return "undecided";
  }
}

namespace {

RationalMatrix integer_column(const IntVec& n) {
  RationalMatrix c(n.size(), 1);
  for (std::size_t i = 0; i < n.size(); ++i) c(i, 0) = Rational(static_cast<long>(n[i]));
  return c;
}

IntVec column_to_intvec(const RationalMatrix& m, std::size_t j) {
  IntVec n(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) n[i] = m(i, j).get_num().get_si();
  return n;
}

RatPolynomial elem_polynomial(const NumberField::Elem& a) { return RatPolynomial(std::vector<Rational>(a.begin(), a.end())); }

// Roots of unity among the ratios of eigenvalues of m: lcm of their orders
// (1 when none). Ratio 1 from repeated eigenvalues is ignored.
unsigned long ratio_root_of_unity_order(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n < 2) return 1;
  IntPolynomial r = exact::charpoly(m.kron(m.inverse()));
  unsigned long l = 1;
  for (auto k : exact::indices_with_phi_at_most(static_cast<unsigned long>(r.degree())))
    if (k > 1 && exact::divides(exact::cyclotomic(k), r)) l = std::lcm(l, k);
  return l;
}

// True when some eigenvalue ratio zeta_i / zeta_j (i != j) of a matrix with
// squarefree characteristic polynomial is a root of unity.
bool has_root_of_unity_ratio(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  IntPolynomial r = exact::charpoly(m.kron(m.inverse()));
  IntPolynomial x1({Integer(-1), Integer(1)});
  for (std::size_t i = 0; i < n; ++i) r = exact::exact_quotient(r, x1);
  return exact::has_root_of_unity(r);
}

// Minimal invariant subspace (coordinates of the generators' space) of a
// commuting family: Q[C] v for v in the common eigenkernel of the
// component of least degree.
RationalMatrix minimal_piece(const std::vector<RationalMatrix>& gens) {
  GenericDecomposition g = generic_decomposition(gens);
  std::size_t best = 0;
  for (std::size_t c = 1; c < g.components.size(); ++c)
    if (g.components[c].degree() < g.components[best].degree()) best = c;
  const PrimaryComponent& comp = g.components[best];
  const RationalMatrix& c = g.element;
  RationalMatrix stack = exact::evaluate(exact::to_rational(comp.factor), c);
  for (std::size_t i = 0; i < gens.size(); ++i)
    stack = stack.vstack(gens[i] - exact::evaluate(elem_polynomial(comp.eigenvalue[i]), c));
  RationalMatrix ker = stack.kernel();
  if (ker.cols() == 0) throw IndeterminateError("minimal_piece: empty common eigenkernel");
  std::vector<Rational> v = ker.col(0);
  std::vector<std::vector<Rational>> cols;
  for (std::size_t k = 0; k < comp.degree(); ++k) {
    cols.push_back(v);
    v = c * v;
  }
  return RationalMatrix::from_columns(cols, c.rows());
}

}  // namespace

std::size_t unit_rank(const PrimaryComponent& comp, long bits) {
  const std::size_t r = comp.eigenvalue.size();
  std::vector<std::size_t> places;
  for (std::size_t k = 0; k < comp.conjugates.size(); ++k)
    if (comp.conjugates[k].real || comp.conjugates[k].center_im >= 0) places.push_back(k);
  for (long prec = bits; prec <= exact::kMaxPrecision; prec *= 2) {
    IntervalMatrix L(r, places.size(), prec);
    bool all_zero = true;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t p = 0; p < places.size(); ++p) {
        AlgebraicEnclosure e = identify_conjugate(*comp.field, comp.eigenvalue[i], comp.conjugates[places[p]], prec);
        if (exact::on_unit_circle(e)) {
          L(i, p) = Interval(Rational(0), prec);
        } else {
          L(i, p) = exact::certified_abs_log(e, prec);
          all_zero = false;
        }
      }
    if (all_zero) return 0;
    try {
      return exact::numeric_rank(L, kProportionalityTol);
    } catch (const IndeterminateError&) {
    }
  }
  throw IndeterminateError("unit_rank: rank undecided at maximum precision");
}

bool is_virtually_cyclic(const AutoAction& a) {
  require_valid(a);
  if (!a.algebra.is_abelian()) throw PreconditionError("is_virtually_cyclic: action must be toral");
  GenericDecomposition g = generic_decomposition(a.generators);
  if (g.components.size() != 1 || g.components[0].multiplicity != 1)
    throw PreconditionError("is_virtually_cyclic: action is not irreducible over Q");
  if (a.rank() <= 1) return true;
  return unit_rank(g.components[0]) <= 1;
}

TotalIrreducibility is_totally_irreducible(const AutoAction& a) {
  require_valid(a);
  if (!a.algebra.is_abelian()) throw PreconditionError("is_totally_irreducible: action must be toral");
  TotalIrreducibility out;
  GenericDecomposition g = generic_decomposition(a.generators);
  if (g.components.size() != 1 || g.components[0].multiplicity != 1) {
    out.verdict = Decision::No;
    out.certificate = "invariant rational subspace: the action module is reducible over Q";
    return out;
  }
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const auto& m = a.generators[i];
    if (!exact::is_irreducible(exact::charpoly(m))) continue;
    if (!has_root_of_unity_ratio(m)) {
      out.verdict = Decision::Yes;
      out.certificate = "generator " + std::to_string(i + 1) +
                        ": irreducible characteristic polynomial and no eigenvalue ratio is a root of unity";
      return out;
    }
    if (a.rank() == 1) {
      out.verdict = Decision::No;
      out.certificate = "an eigenvalue ratio of the generator is a root of unity; a power preserves a proper subtorus";
      return out;
    }
  }
  // Separation of every pair of embeddings by some generator.
  const PrimaryComponent& comp = g.components[0];
  const std::size_t n = comp.degree();
  std::vector<std::vector<Interval>> logs(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < a.rank(); ++i) {
      AlgebraicEnclosure e = identify_conjugate(*comp.field, comp.eigenvalue[i], comp.conjugates[k], kSpectrumPrecision);
      logs[k].push_back(exact::on_unit_circle(e) ? Interval(Rational(0), kSpectrumPrecision)
                                                 : exact::certified_abs_log(e, kSpectrumPrecision));
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool separated = false;
      for (std::size_t i = 0; i < a.rank() && !separated; ++i) separated = !logs[x][i].overlaps(logs[y][i]);
      if (!separated) {
        out.verdict = Decision::Undecided;
        out.certificate = "conjugates " + std::to_string(x) + " and " + std::to_string(y) +
                          " are not separated in absolute value by any generator";
        return out;
      }
    }
  out.verdict = Decision::Yes;
  out.certificate = "every pair of embeddings is separated in absolute value by some generator";
  return out;
}

CentralLayer central_irreducible_layer(const AutoAction& a, std::size_t orbit_cap) {
  require_valid(a);
  const std::size_t r = a.rank();
  RationalMatrix bz = exact::saturate(nil::center(a.algebra).basis());
  std::vector<RationalMatrix> zgens;
  for (const auto& m : a.generators) zgens.push_back(restrict_to(m, bz));
  // Irreducible piece over Q, in center lattice coordinates.
  RationalMatrix piece = exact::saturate(minimal_piece(zgens));
  CentralLayer out;
  out.sigma = RationalMatrix::identity(r);
  unsigned long order = 1;
  for (const auto& m : zgens) order = std::lcm(order, ratio_root_of_unity_order(restrict_to(m, piece)));
  if (order > 1) {
    // Pass to Sigma_0 = order * Z^r, split the piece further, then take the
    // stabilizer of the smaller piece.
    std::vector<RationalMatrix> pgens;
    for (const auto& m : zgens) pgens.push_back(restrict_to(m, piece).pow(static_cast<long long>(order)));
    RationalMatrix sub = exact::saturate(piece * minimal_piece(pgens));
    std::size_t total = 1;
    for (std::size_t i = 0; i < r; ++i) {
      total *= order;
      if (total > orbit_cap) throw ExhaustedError("central_irreducible_layer: orbit enumeration cap exceeded");
    }
    RationalMatrix gensig = RationalMatrix::identity(r) * Rational(static_cast<long>(order));
    IntVec n(r, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t t = idx;
      for (std::size_t i = 0; i < r; ++i) {
        n[i] = static_cast<long long>(t % order);
        t /= order;
      }
      RationalMatrix m = RationalMatrix::identity(bz.cols());
      for (std::size_t i = 0; i < r; ++i)
        if (n[i]) m = m * zgens[i].pow(n[i]);
      if (exact::contained_in(m * sub, sub)) gensig = gensig.hstack(integer_column(n));
    }
    out.sigma = exact::lattice_basis(gensig);
    out.orbit_size = total;
    piece = sub;
  }
  out.lattice_basis = exact::saturate(bz * piece);
  out.subspace = RationalSubspace(a.dim(), out.lattice_basis);
  for (std::size_t j = 0; j < out.sigma.cols(); ++j)
    out.induced_action.push_back(restrict_to(a.element(column_to_intvec(out.sigma, j)), out.lattice_basis));
  return out;
}

std::vector<TowerLayer> equivariant_tower(const AutoAction& a, std::size_t orbit_cap) {
  require_valid(a);
  const std::size_t d = a.dim();
  std::vector<TowerLayer> out;
  AutoAction cur = a;
  RationalMatrix lift = RationalMatrix::identity(d);  // current coordinates -> original
  RationalMatrix sigma_total = RationalMatrix::identity(a.rank());
  RationalMatrix h(d, 0);
  for (;;) {
    CentralLayer layer = central_irreducible_layer(cur, orbit_cap);
    sigma_total = sigma_total * layer.sigma;
    cur = restrict_to_subgroup(cur, layer.sigma);
    TowerLayer t;
    t.layer_basis = lift * layer.lattice_basis;
    h = h.hstack(t.layer_basis);
    t.subgroup = RationalSubspace(d, h);
    t.quotient_torus_dim = layer.lattice_basis.cols();
    t.induced_action = layer.induced_action;
    t.sigma_index = sigma_total;
    out.push_back(std::move(t));
    if (layer.subspace.dim() == cur.dim()) break;
    InducedQuotient q = induced_on_quotient(cur, layer.subspace);
    lift = lift * q.quotient.section;
    cur = q.action;
  }
  return out;
}

std::string ObstructionReport::summary() const {
  switch (virtually_cyclic_factor) {
    case Decision::No:
      return "no virtually cyclic algebraic factor: CERTIFIED";
    case Decision::Yes:
      return "virtually cyclic algebraic factor: EXISTS";
    default:
      return "virtually cyclic algebraic factor: UNDECIDED";
  }
}

ObstructionReport obstruction_report(const AutoAction& a, int box) {
  require_valid(a);
  ObstructionReport rep;
  InducedQuotient ab = abelianization(a);
  GenericDecomposition g = generic_decomposition(ab.action.generators);
  bool any_yes = false, any_undecided = false;
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    const auto& comp = g.components[c];
    FactorVerdict v;
    v.label = "X_ab component " + std::to_string(c) + " (" + comp.factor.to_string() + ")^" +
              std::to_string(comp.multiplicity);
    v.dim = comp.dim();
    try {
      v.unit_rank = unit_rank(comp);
      v.virtually_cyclic = *v.unit_rank <= 1 ? Decision::Yes : Decision::No;
    } catch (const IndeterminateError&) {
      v.virtually_cyclic = Decision::Undecided;
    }
    any_yes |= v.virtually_cyclic == Decision::Yes;
    any_undecided |= v.virtually_cyclic == Decision::Undecided;
    rep.abelian_factors.push_back(std::move(v));
  }
  rep.virtually_cyclic_factor = any_yes ? Decision::Yes : any_undecided ? Decision::Undecided : Decision::No;

  auto tower = equivariant_tower(a);
  for (std::size_t i = 0; i < tower.size(); ++i) {
    FactorVerdict v;
    v.label = "tower layer " + std::to_string(i + 1);
    v.dim = tower[i].quotient_torus_dim;
    try {
      AutoAction layer = AutoAction::toral(tower[i].induced_action);
      GenericDecomposition lg = generic_decomposition(layer.generators);
      v.unit_rank = unit_rank(lg.components[0]);
      v.virtually_cyclic = *v.unit_rank <= 1 ? Decision::Yes : Decision::No;
    } catch (const IndeterminateError&) {
      v.virtually_cyclic = Decision::Undecided;
    }
    rep.tower_layers.push_back(std::move(v));
  }

  LyapunovSpectrum s = lyapunov_spectrum(a);
  const std::size_t r = a.rank();
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= static_cast<std::size_t>(2 * box + 1);
  for (std::size_t idx = 0; idx < total; ++idx) {
    IntVec n(r);
    std::size_t t = idx;
    for (std::size_t i = 0; i < r; ++i) {
      n[i] = static_cast<long long>(t % (2 * box + 1)) - box;
      t /= (2 * box + 1);
    }
    EntropyRow row;
    row.n = n;
    row.entropy = haar_entropy(s, n);
    row.positive = row.entropy.positive();
    rep.entropy.push_back(std::move(row));
  }
  return rep;
}

}  // namespace nilrigid::action
