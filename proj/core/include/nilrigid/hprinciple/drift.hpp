#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "nilrigid/exact/matrix.hpp"
#include "nilrigid/exact/polynomial.hpp"

namespace nilrigid::hprinciple {

using exact::RationalMatrix;
using exact::RatPolynomial;

/// U^t = exp(tN) on R^d. Columns of jordan_basis are e_{l,0}, ..., e_{l,d_l-1}
/// block after block, with N e_{l,i} = e_{l,i-1} and N e_{l,0} = 0.
struct UnipotentFlow {
  std::size_t dim = 0;
  RationalMatrix jordan_basis;
  std::vector<std::size_t> block_dims;
  RationalMatrix generator_log;
  RationalMatrix basis_inverse;

  /// Jordan basis = identity.
  static UnipotentFlow standard(std::vector<std::size_t> block_dims);
  /// Jordan chains of a nilpotent rational matrix, blocks by decreasing size.
  static UnipotentFlow from_log(const RationalMatrix& n);

  std::size_t max_block() const;
  /// Coordinates of v in the Jordan basis.
  std::vector<Rational> coordinates(const std::vector<Rational>& v) const;
  RationalMatrix at(const Rational& t) const;
};

/// T = min over blocks l and 0 <= i < j of the t > 0 with
/// |v_{l,j}| t^{j-i} / (j-i)! = 1. The minimum is attained by some (l, j, k = j - i)
/// and T^k = k! / |v_{l,j}| exactly.
struct DriftTime {
  bool infinite = false;
  double value = 0;
  std::size_t block = 0, j = 0, k = 0;
  Rational power_value;  // T^k
};

DriftTime drift_time(const UnipotentFlow& flow, const std::vector<Rational>& v);
DriftTime drift_time(const UnipotentFlow& flow, const std::vector<double>& v);

struct DriftSplit {
  Rational t;
  std::vector<Rational> w, w_perp;  // ambient coordinates
};

/// w(t) = sum_l f_{l,0}(t) e_{l,0}; w_perp = U^t v - w.
DriftSplit drift_decomposition(const UnipotentFlow& flow, const std::vector<Rational>& v, const Rational& t);

struct DriftSplitD {
  double t = 0;
  std::vector<double> w, w_perp;
};
DriftSplitD drift_decomposition(const UnipotentFlow& flow, const std::vector<double>& v, double t);

double norm(const std::vector<double>& v);
std::vector<double> to_double(const std::vector<Rational>& v);

/// |w(t)|^2 as a polynomial in t (ambient Euclidean norm).
RatPolynomial fixed_part_norm2(const UnipotentFlow& flow, const std::vector<Rational>& v);

inline constexpr double kSmallVectorBound = 1e-3;
inline constexpr std::size_t kWindowSamples = 10000;

struct GoodWindow {
  double T = 0;
  Rational kappa;
  double sampled_fraction = 0;
  /// Root-isolation result, present when every block has size <= 3.
  std::optional<double> exact_fraction;
  std::size_t samples = 0;
  double fraction() const { return exact_fraction ? *exact_fraction : sampled_fraction; }
};

/// Fraction of t in [0, T] with |w(t)| > kappa, for the given kappa. Throws
/// PreconditionError when v is flow-fixed or |v| > small_bound (up to rounding).
GoodWindow good_window(const UnipotentFlow& flow, const std::vector<Rational>& v, const Rational& kappa,
                       std::size_t samples = kWindowSamples, double small_bound = kSmallVectorBound);

/// kappa = C_kappa(d) eps^{d(d-1)/2} with the frozen constant for d = flow.dim.
Rational frozen_kappa(std::size_t d, const Rational& eps);
/// Same, with eps in (0, 1).
GoodWindow good_window(const UnipotentFlow& flow, const std::vector<Rational>& v, double eps,
                       std::size_t samples = kWindowSamples, double small_bound = kSmallVectorBound);

/// max over the grid t = T k / grid (k = 0..grid) of |w_perp(t)|.
double max_w_perp(const UnipotentFlow& flow, const std::vector<double>& v, std::size_t grid = 1000);

/// max |w_perp| against |v| along fixed directions for the single Jordan
/// block of size d; slope is the least-squares fit of log max |w_perp| on log |v|.
struct ScaleRow {
  double radius = 0;
  double max_w_perp = 0;
};
struct ScaleSweep {
  std::size_t d = 0;
  std::size_t directions = 0;
  std::vector<ScaleRow> rows;
  double slope = 0;
  double target = 0;  // 1/d
  double relative_deviation() const { return target > 0 ? std::abs(slope - target) / target : 0.0; }
};
ScaleSweep scale_sweep(std::size_t d, const std::vector<double>& radii, std::size_t directions, std::uint64_t seed,
                       std::size_t grid = 1000);
/// Same along random directions for an arbitrary flow; target 1/flow.dim.
ScaleSweep scale_sweep(const UnipotentFlow& flow, const std::vector<double>& radii, std::size_t directions,
                       std::uint64_t seed, std::size_t grid = 1000);

/// Random block structure of dimension d with a block of size >= 2, and a
/// random direction scaled to |v| = radius; deterministic in (seed, index).
struct RandomInstance {
  UnipotentFlow flow;
  std::vector<Rational> v;
};
RandomInstance random_instance(std::size_t d, double radius, std::uint64_t seed, std::uint64_t index);
/// Random non-fixed direction for a given flow.
std::vector<Rational> random_vector(const UnipotentFlow& flow, double radius, std::uint64_t seed, std::uint64_t index);

/// Calibration statistics for one instance. drift_ratio is
/// max |w_perp| / |v|^{1/d}; kappa_ratio is the eps-quantile of |w(t)| over the
/// sampled window divided by eps^{d(d-1)/2}.
double drift_ratio(const UnipotentFlow& flow, const std::vector<Rational>& v, std::size_t grid = 1000);
double kappa_ratio(const UnipotentFlow& flow, const std::vector<Rational>& v, double eps,
                   std::size_t samples = kWindowSamples);

/// Frozen C_d of the drift bound.
double frozen_drift_constant(std::size_t d);

/// |w_perp(t)| <= C_d |v|^{1/d} on a grid of [0, T], over `count` random
/// instances with log-uniform |v| in [1e-5, 1e-3].
struct DriftBoundCheck {
  std::size_t d = 0;
  std::size_t instances = 0;
  std::size_t violations = 0;
  double constant = 0;
  double max_ratio = 0;
};
DriftBoundCheck check_drift_bound(std::size_t d, std::size_t count, std::uint64_t seed, std::size_t grid = 1000);

/// good_window with the frozen kappa for each eps over `count` random instances.
struct WindowCheck {
  std::size_t d = 0;
  double eps = 0;
  std::size_t instances = 0;
  std::size_t failures = 0;   // fraction < 1 - eps
  std::size_t exact_paths = 0;
  double min_fraction = 1;
};
WindowCheck check_good_window(std::size_t d, double eps, std::size_t count, std::uint64_t seed,
                              std::size_t samples = kWindowSamples);

}  // namespace nilrigid::hprinciple
