#pragma once

#include <array>
#include <vector>

#include "nilrigid/exact/rational.hpp"
#include "nilrigid/exact/real.hpp"

namespace nilrigid::heisenberg {

using exact::BigFloat;

/// Closed-form law of the 13-dimensional Heisenberg group in exponential
/// coordinates (x, y, z) packed as a 13-vector:
/// (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x.y'-x'.y).
std::vector<Rational> heis_multiply(const std::vector<Rational>& p, const std::vector<Rational>& q);

struct HeisReduction {
  std::vector<Rational> fractional;  // in [-1/2, 1/2)^13
  std::vector<Rational> integer;     // lattice point, fractional * integer = p
};

/// [(x,y,z)] = ([x], [y], [z + x.{y} - {x}.y]) and the matching fractional part.
HeisReduction heis_reduce(const std::vector<Rational>& p);

/// High-precision point of the group.
struct HeisPoint {
  std::array<BigFloat, 6> x, y;
  BigFloat z;
  explicit HeisPoint(long prec);
  long precision() const { return z.precision(); }
};

/// Fundamental-domain representative, same formula as heis_reduce.
HeisPoint heis_reduce(const HeisPoint& p);

/// Sup over the 13 coordinates of the distance on R/Z between two points of
/// the fundamental domain (wrap-aware).
BigFloat torus_distance(const HeisPoint& p, const HeisPoint& q);

}  // namespace nilrigid::heisenberg
