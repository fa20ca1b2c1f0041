#include "nilrigid/action/action.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "common/located_json.hpp"
#include "nilrigid/exact/linalg.hpp"
#include "nilrigid/nil/io.hpp"

namespace nilrigid::action {

RationalMatrix AutoAction::element(const IntVec& n) const {
  if (n.size() != rank()) throw PreconditionError("AutoAction::element: wrong exponent length");
  RationalMatrix r = RationalMatrix::identity(dim());
  for (std::size_t i = 0; i < n.size(); ++i)
    if (n[i] != 0) r = r * generators[i].pow(n[i]);
  return r;
}

AutoAction AutoAction::toral(std::vector<RationalMatrix> generators) {
  if (generators.empty()) throw PreconditionError("toral action needs at least one generator");
  return {NilAlgebra::abelian(generators[0].rows()), std::move(generators)};
}

ValidationReport validate_action(const AutoAction& a) {
  ValidationReport rep;
  const std::size_t d = a.dim();
  if (a.rank() == 0) rep.failures.push_back("action has no generators");
  for (std::size_t i = 0; i < a.rank(); ++i) {
    const auto& m = a.generators[i];
    std::string g = "generator " + std::to_string(i + 1);
    if (m.rows() != d || m.cols() != d) {
      rep.failures.push_back(g + " is not " + std::to_string(d) + "x" + std::to_string(d));
      continue;
    }
    if (!m.is_integer()) rep.failures.push_back(g + " has non-integer entries");
    Rational det = m.determinant();
    if (det != 1 && det != -1) rep.failures.push_back(g + " has determinant " + exact::to_string(det));
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        auto lhs = m * a.algebra.structure(p, q);
        auto rhs = a.algebra.bracket(m.col(p), m.col(q));
        if (lhs != rhs) {
          rep.failures.push_back(g + " does not preserve the bracket [e_" + std::to_string(p + 1) + ", e_" +
                                 std::to_string(q + 1) + "]");
          p = d;
          break;
        }
      }
  }
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = i + 1; j < a.rank(); ++j) {
      const auto& x = a.generators[i];
      const auto& y = a.generators[j];
      if (x.rows() != d || y.rows() != d || x.cols() != d || y.cols() != d) continue;
      RationalMatrix c = exact::commutator(x, y);
      if (!c.is_zero())
        rep.failures.push_back("generators " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                               " do not commute; M_i M_j - M_j M_i =\n" + c.to_string());
    }
  return rep;
}

void require_valid(const AutoAction& a) {
  auto rep = validate_action(a);
  if (rep.ok()) return;
  std::string msg = "invalid action:";
  for (const auto& f : rep.failures) msg += "\n  " + f;
  throw PreconditionError(msg);
}

RationalMatrix restrict_to(const RationalMatrix& m, const RationalMatrix& b) {
  if (b.cols() == 0) return RationalMatrix(0, 0);
  return b.solve(m * b);
}

InducedQuotient induced_on_quotient(const AutoAction& a, const RationalSubspace& ideal) {
  for (const auto& m : a.generators)
    if (!ideal.invariant_under(m)) throw PreconditionError("induced_on_quotient: ideal is not invariant");
  nil::Quotient q = nil::quotient(a.algebra, ideal);
  std::vector<RationalMatrix> gens;
  for (const auto& m : a.generators) gens.push_back(q.projection * m * q.section);
  AutoAction induced{q.algebra, std::move(gens)};
  return {std::move(q), std::move(induced)};
}

InducedQuotient abelianization(const AutoAction& a) {
  auto lcs = nil::lower_central_series(a.algebra);
  if (lcs.size() < 2 || lcs[1].dim() == 0) {
    // Already abelian: the identity quotient.
    nil::Quotient q{a.algebra, RationalMatrix::identity(a.dim()), RationalMatrix::identity(a.dim())};
    return {q, a};
  }
  return induced_on_quotient(a, lcs[1]);
}

AutoAction restrict_to_subgroup(const AutoAction& a, const RationalMatrix& sigma) {
  if (sigma.rows() != a.rank() || !sigma.is_integer())
    throw PreconditionError("restrict_to_subgroup: sigma must be an integer r x r' matrix");
  std::vector<RationalMatrix> gens;
  for (std::size_t j = 0; j < sigma.cols(); ++j) {
    IntVec n(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) n[i] = sigma(i, j).get_num().get_si();
    gens.push_back(a.element(n));
  }
  return {a.algebra, std::move(gens)};
}

namespace {

using detail::LocatedJson;
using detail::pointer_join;

RationalMatrix parse_matrix(const LocatedJson& doc, const std::string& p, std::size_t d) {
  const auto& v = doc.at(p);
  if (!v.is_array()) doc.fail(p, "generator must be an array");
  RationalMatrix m(d, d);
  // Accept either a flat row-major list of d*d entries or a list of d rows.
  if (v.size() == d * d && (v.empty() || !v[0].is_array())) {
    for (std::size_t k = 0; k < d * d; ++k) m(k / d, k % d) = doc.rational(pointer_join(p, k));
    return m;
  }
  if (v.size() != d) doc.fail(p, "generator must have " + std::to_string(d * d) + " entries or " + std::to_string(d) + " rows");
  for (std::size_t i = 0; i < d; ++i) {
    std::string rp = pointer_join(p, i);
    if (doc.array_size(rp) != d) doc.fail(rp, "row must have " + std::to_string(d) + " entries");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = doc.rational(pointer_join(rp, j));
  }
  return m;
}

}  // namespace

AutoAction parse_action(std::string_view text, const std::string& base_dir) {
  LocatedJson doc(text);
  if (!doc.root().is_object()) doc.fail("", "action file must be a JSON object");
  NilAlgebra alg = NilAlgebra::abelian(1);
  if (doc.has("/torus_dim")) {
    long long d = doc.integer("/torus_dim");
    if (d <= 0) doc.fail("/torus_dim", "torus_dim must be positive");
    alg = NilAlgebra::abelian(static_cast<std::size_t>(d));
  } else if (doc.has("/algebra")) {
    const auto& a = doc.at("/algebra");
    try {
      if (a.is_string()) {
        std::filesystem::path p(a.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        alg = nil::load_algebra(p.string());
      } else if (a.is_object()) {
        alg = nil::parse_algebra(a.dump());
      } else {
        doc.fail("/algebra", "algebra must be a file path or an inline object");
      }
    } catch (const InputError& e) {
      doc.fail("/algebra", std::string("in algebra: ") + e.what());
    } catch (const PreconditionError& e) {
      doc.fail("/algebra", e.what());
    }
  } else {
    doc.fail("", "action file needs \"algebra\" or \"torus_dim\"");
  }
  std::size_t n = doc.array_size("/generators");
  if (n == 0) doc.fail("/generators", "at least one generator is required");
  if (doc.has("/rank") && doc.integer("/rank") != static_cast<long long>(n))
    doc.fail("/rank", "rank does not match the number of generators");
  std::vector<RationalMatrix> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(parse_matrix(doc, pointer_join("/generators", i), alg.dim()));
  AutoAction act{alg, std::move(gens)};
  auto rep = validate_action(act);
  if (!rep.ok()) {
    std::string msg = "invalid action:";
    for (const auto& f : rep.failures) msg += " " + f + ";";
    doc.fail("/generators", msg);
  }
  return act;
}

AutoAction load_action(const std::string& path) {
  std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_action(detail::read_file(path), dir.empty() ? "." : dir);
}

std::string action_to_json(const AutoAction& a) {
  nlohmann::ordered_json j;
  j["algebra"] = nlohmann::ordered_json::parse(nil::algebra_to_json(a.algebra));
  j["rank"] = a.rank();
  auto gens = nlohmann::ordered_json::array();
  for (const auto& m : a.generators) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) {
        const Rational& q = m(i, k);
        if (q.get_den() == 1 && q.get_num().fits_slong_p())
          row.push_back(q.get_num().get_si());
        else
          row.push_back(exact::to_string(q));
      }
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  j["generators"] = gens;
  return j.dump() + "\n";
}

}  // namespace nilrigid::action
