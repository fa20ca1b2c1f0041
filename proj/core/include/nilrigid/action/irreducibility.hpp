#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilrigid/action/spectrum.hpp"

namespace nilrigid::action {

enum class Decision { Yes, No, Undecided };
std::string to_string(Decision d);

/// Rank of the subgroup of K^x / torsion generated by the eigenvalues of the
/// generators on one primary component: the numeric rank of the matrix of
/// log|sigma(mu_i)| over the archimedean places (exact zeros on the unit
/// circle). Escalates precision; throws IndeterminateError at the cap.
std::size_t unit_rank(const PrimaryComponent& comp, long bits = kSpectrumPrecision);

/// Toral action irreducible over Q (checked): true iff the unit rank is <= 1.
bool is_virtually_cyclic(const AutoAction& a);

struct TotalIrreducibility {
  Decision verdict = Decision::Undecided;
  std::string certificate;
};

/// Toral actions only. Yes when some generator has irreducible
/// characteristic polynomial with no eigenvalue ratio a root of unity
/// (cyclotomic test on charpoly(M kron M^{-1})), or when every pair of
/// distinct conjugates is separated in absolute value by some generator.
/// No when an invariant rational subspace exists or a single generator has
/// a root-of-unity eigenvalue ratio. Undecided otherwise.
TotalIrreducibility is_totally_irreducible(const AutoAction& a);

struct CentralLayer {
  RationalSubspace subspace;       // inside the center, algebra coordinates
  RationalMatrix lattice_basis;    // Z-basis of subspace cap Z^d
  RationalMatrix sigma;            // r x r integer, columns generate Sigma
  std::vector<RationalMatrix> induced_action;  // Sigma generators on lattice_basis
  std::size_t orbit_size = 1;      // cosets of the stabilizer that were enumerated
};

inline constexpr std::size_t kOrbitCap = 1u << 16;

/// Minimal rational invariant subspace of the center whose induced action
/// of a finite-index Sigma is totally irreducible. Throws ExhaustedError
/// when the stabilizer enumeration exceeds the cap.
CentralLayer central_irreducible_layer(const AutoAction& a, std::size_t orbit_cap = kOrbitCap);

struct TowerLayer {
  RationalSubspace subgroup;       // H_i, cumulative, in algebra coordinates
  RationalMatrix layer_basis;      // lift of the layer lattice basis
  std::size_t quotient_torus_dim = 0;
  std::vector<RationalMatrix> induced_action;
  RationalMatrix sigma_index;      // cumulative Sigma in Z^r
};

std::vector<TowerLayer> equivariant_tower(const AutoAction& a, std::size_t orbit_cap = kOrbitCap);

struct FactorVerdict {
  std::string label;
  std::size_t dim = 0;
  std::optional<std::size_t> unit_rank;
  Decision virtually_cyclic = Decision::Undecided;
};

struct EntropyRow {
  IntVec n;
  Interval entropy{kSpectrumPrecision};
  bool positive = false;
};

struct ObstructionReport {
  std::vector<FactorVerdict> abelian_factors;  // primary components of X_ab
  std::vector<FactorVerdict> tower_layers;
  std::vector<EntropyRow> entropy;
  /// Yes: a virtually cyclic algebraic factor exists; No: certified none.
  Decision virtually_cyclic_factor = Decision::Undecided;
  std::string summary() const;
};

/// Every nontrivial algebraic factor maps onto a nontrivial factor of the
/// maximal abelian factor X_ab, so the verdict is decided on the primary
/// components of X_ab; tower layers are reported alongside.
ObstructionReport obstruction_report(const AutoAction& a, int box = 5);

}  // namespace nilrigid::action
