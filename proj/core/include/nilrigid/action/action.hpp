#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nilrigid/nil/algebra.hpp"

namespace nilrigid::action {

using exact::RationalMatrix;
using nil::NilAlgebra;
using nil::RationalSubspace;
using IntVec = std::vector<long long>;

/// Z^r action by automorphisms; generators[i] is the differential of the
/// i-th standard generator in the lattice basis of the algebra.
struct AutoAction {
  NilAlgebra algebra = NilAlgebra::abelian(1);
  std::vector<RationalMatrix> generators;

  std::size_t rank() const { return generators.size(); }
  std::size_t dim() const { return algebra.dim(); }
  /// alpha^n = prod M_i^{n_i}.
  RationalMatrix element(const IntVec& n) const;

  static AutoAction toral(std::vector<RationalMatrix> generators);
};

struct ValidationReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks every standing assumption exactly: shapes, pairwise commutation,
/// bracket preservation on basis pairs, integrality and det = +-1.
ValidationReport validate_action(const AutoAction& a);
/// Throws PreconditionError listing the failures.
void require_valid(const AutoAction& a);

/// Matrix of m restricted to the invariant subspace with basis b (columns):
/// the X with m b = b X. Throws PreconditionError if b is not invariant.
RationalMatrix restrict_to(const RationalMatrix& m, const RationalMatrix& b);

/// Action induced on the quotient by an invariant rational ideal, in the
/// quotient's lattice-adapted basis.
struct InducedQuotient {
  nil::Quotient quotient;
  AutoAction action;
};
InducedQuotient induced_on_quotient(const AutoAction& a, const RationalSubspace& ideal);

/// Action on g / [g, g] (the maximal abelian factor).
InducedQuotient abelianization(const AutoAction& a);

/// Replaces the generators by alpha^{s_j} for the columns s_j of an integer
/// r x r' matrix.
AutoAction restrict_to_subgroup(const AutoAction& a, const RationalMatrix& sigma);

/// {"algebra": <path or inline algebra>, "rank": r, "generators": [[...row-major...], ...]}
/// or {"torus_dim": d, "generators": [...]}. Relative algebra paths resolve
/// against base_dir.
AutoAction parse_action(std::string_view text, const std::string& base_dir = ".");
AutoAction load_action(const std::string& path);
std::string action_to_json(const AutoAction& a);

}  // namespace nilrigid::action
