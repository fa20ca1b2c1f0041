#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nilrigid/action/spectrum.hpp"

namespace nilrigid::action {

/// Exact multiplicative Jordan decomposition m = s u = u s with s semisimple
/// (a polynomial in m, found by Newton iteration on the squarefree part of
/// the characteristic polynomial), u unipotent and n = log u nilpotent.
struct JordanParts {
  RationalMatrix semisimple, unipotent, nilpotent_log;
};
JordanParts multiplicative_jordan(const RationalMatrix& m);

/// Finite log and exp series for unipotent / nilpotent matrices.
RationalMatrix unipotent_log(const RationalMatrix& u);
RationalMatrix nilpotent_exp(const RationalMatrix& n);

/// alpha^m restricted to a coarse class equals Z^m U^m. The matrices act on
/// the whole algebra and preserve every class subspace.
struct SemisimpleUnipotentSplit {
  std::size_t coarse_class = 0;
  SubspaceEnclosure subspace;
  std::vector<RationalMatrix> Z_generators;
  std::vector<RationalMatrix> U_generators;
  std::vector<RationalMatrix> U_logs;

  RationalMatrix Z(const IntVec& m) const;
};

SemisimpleUnipotentSplit semisimple_unipotent_split(const LyapunovSpectrum& s, std::size_t coarse_class);

/// U^q = exp(sum q_i log U^{e_i}); exact for rational q.
RationalMatrix unipotent_real_power(const SemisimpleUnipotentSplit& split, const std::vector<Rational>& q);
Eigen::MatrixXd unipotent_real_power(const SemisimpleUnipotentSplit& split, const std::vector<double>& q);

/// ker(U^p - Id) inside the class subspace. Requires chi(p) to contain 0 on
/// the class. The result's invariance under every Z^{e_i} and log U^{e_i}
/// is verified exactly; the dimension is exact.
SubspaceEnclosure isometric_subspace(const LyapunovSpectrum& s, const SemisimpleUnipotentSplit& split,
                                     const std::vector<Rational>& p);

}  // namespace nilrigid::action
