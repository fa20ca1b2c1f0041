#pragma once

#include <vector>

#include "nilrigid/nil/algebra.hpp"

namespace nilrigid::nil {

/// Group elements are written in exponential coordinates: p = exp(v).
using GroupPoint = Vec;

inline constexpr int kMaxBchClass = 6;

/// exp(u) exp(v) = exp(bch(u, v)), truncated at the nilpotency class (exact).
GroupPoint bch(const NilAlgebra& alg, const GroupPoint& u, const GroupPoint& v);
inline GroupPoint inverse(const GroupPoint& p) {
  GroupPoint r = p;
  for (auto& q : r) q = -q;
  return r;
}
/// g h g^{-1} h^{-1}.
GroupPoint group_commutator(const NilAlgebra& alg, const GroupPoint& g, const GroupPoint& h);
GroupPoint power(const NilAlgebra& alg, const GroupPoint& p, long n);

/// Same multiplication in floating point (double), for sampling.
std::vector<double> bch(const NilAlgebra& alg, const std::vector<double>& u, const std::vector<double>& v);

struct Reduction {
  GroupPoint representative;  // in the fundamental domain
  GroupPoint lattice_part;    // lattice element with p = representative * lattice_part
};

/// Lattice Gamma generated by exp(e_1), ..., exp(e_d). Requires the Mal'cev
/// order. Coordinates are rounded one at a time, first to last, by right
/// multiplication with exp(-n e_i); the representative lands in
/// the box [-1/2, 1/2)^d.
Reduction reduce_fundamental(const NilAlgebra& alg, const GroupPoint& p);
std::vector<double> reduce_fundamental(const NilAlgebra& alg, const std::vector<double>& p);

/// True when p lies in Gamma (membership of the group generated by exp(e_i)).
bool in_lattice(const NilAlgebra& alg, const GroupPoint& p);

}  // namespace nilrigid::nil
