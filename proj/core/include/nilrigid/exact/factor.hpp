#pragma once

#include <vector>

#include "nilrigid/exact/polynomial.hpp"

namespace nilrigid::exact {

struct FactorTerm {
  IntPolynomial factor;  // primitive, positive leading coefficient, irreducible over Q
  int multiplicity = 1;
};

struct Factorization {
  Integer unit;  // signed content
  std::vector<FactorTerm> terms;

  /// unit * prod factor^multiplicity.
  IntPolynomial expand() const;
};

/// Complete factorization over Q (Zassenhaus: mod-p factoring, Hensel lifting,
/// subset recombination). Factors are sorted by degree, then coefficients.
Factorization factor_rational(const IntPolynomial& p);

bool is_irreducible(const IntPolynomial& p);

/// Squarefree decomposition of a primitive polynomial: pairs (g_i, i) with p = prod g_i^i.
std::vector<FactorTerm> squarefree_decomposition(const IntPolynomial& p);

unsigned long euler_phi(unsigned long k);
IntPolynomial cyclotomic(unsigned long k);

/// Every k with phi(k) <= bound, ascending.
std::vector<unsigned long> indices_with_phi_at_most(unsigned long bound);

/// True iff p is a product of cyclotomic factors, i.e. every root is a root of unity
/// (p must be nonzero and squarefree-insensitive; multiplicities are allowed).
bool all_roots_are_roots_of_unity(const IntPolynomial& p);

/// True iff some root of p is a root of unity.
bool has_root_of_unity(const IntPolynomial& p);

}  // namespace nilrigid::exact
