#include "nilrigid/hprinciple/drift.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "nilrigid/hprinciple/constants.hpp"

namespace nilrigid::hprinciple {

using exact::from_double;
using exact::IntPolynomial;

namespace {

struct Block {
  std::size_t offset, size;
};

std::vector<Block> blocks_of(const UnipotentFlow& f) {
  std::vector<Block> out;
  std::size_t o = 0;
  for (auto s : f.block_dims) {
    out.push_back({o, s});
    o += s;
  }
  return out;
}

Rational factorial(std::size_t k) {
  Rational r(1);
  for (std::size_t i = 2; i <= k; ++i) r *= Rational(static_cast<long>(i));
  return r;
}

double factorial_d(std::size_t k) { return factorial(k).get_d(); }

std::vector<std::vector<double>> to_double(const RationalMatrix& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_d();
  return out;
}

std::vector<double> mat_vec(const std::vector<std::vector<double>>& m, const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

RationalMatrix nilpotent_standard(const std::vector<std::size_t>& dims) {
  std::size_t d = 0;
  for (auto s : dims) d += s;
  RationalMatrix n(d, d);
  std::size_t o = 0;
  for (auto s : dims) {
    for (std::size_t i = 1; i < s; ++i) n(o + i - 1, o + i) = 1;
    o += s;
  }
  return n;
}

void require_vector(const UnipotentFlow& f, std::size_t n) {
  if (n != f.dim) throw PreconditionError("vector dimension does not match the flow");
}

// Same as drift_time, on Jordan coordinates given as doubles; `exact` fills
// power_value when present.
DriftTime drift_time_coords(const UnipotentFlow& flow, const std::vector<double>& c,
                            const std::vector<Rational>* exact) {
  DriftTime best;
  best.infinite = true;
  best.value = std::numeric_limits<double>::infinity();
  std::size_t l = 0;
  for (const auto& b : blocks_of(flow)) {
    for (std::size_t j = 1; j < b.size; ++j) {
      const double a = std::abs(c[b.offset + j]);
      if (exact ? (*exact)[b.offset + j] == 0 : a == 0.0) continue;
      for (std::size_t k = 1; k <= j; ++k) {
        const double t = std::exp((std::log(factorial_d(k)) - std::log(a)) / double(k));
        if (t < best.value) {
          best.infinite = false;
          best.value = t;
          best.block = l;
          best.j = j;
          best.k = k;
          best.power_value = exact ? factorial(k) / abs(Rational((*exact)[b.offset + j])) : from_double(factorial_d(k) / a);
        }
      }
    }
    ++l;
  }
  if (best.infinite) best.power_value = 0;
  return best;
}

std::vector<double> coords_double(const UnipotentFlow& flow, const std::vector<double>& v) {
  return mat_vec(to_double(flow.basis_inverse), v);
}

// Jordan coordinates of U^t v.
std::vector<double> flow_coords(const UnipotentFlow& flow, const std::vector<double>& c, double t) {
  std::vector<double> f(c.size(), 0.0);
  for (const auto& b : blocks_of(flow))
    for (std::size_t i = 0; i < b.size; ++i) {
      double term = 1.0, s = 0.0;
      for (std::size_t j = i; j < b.size; ++j) {
        s += c[b.offset + j] * term;
        term *= t / double(j - i + 1);
      }
      f[b.offset + i] = s;
    }
  return f;
}

// Polynomials W_r(t) with w(t) = (W_r(t))_r in ambient coordinates.
std::vector<exact::RatPolynomial> fixed_part_polys(const UnipotentFlow& flow, const std::vector<Rational>& c) {
  std::vector<exact::RatPolynomial> out(flow.dim);
  for (const auto& b : blocks_of(flow)) {
    std::vector<Rational> coeffs(b.size);
    for (std::size_t j = 0; j < b.size; ++j) coeffs[j] = c[b.offset + j] / factorial(j);
    exact::RatPolynomial f(coeffs);
    for (std::size_t r = 0; r < flow.dim; ++r)
      if (flow.jordan_basis(r, b.offset) != 0) out[r] = out[r] + f * flow.jordan_basis(r, b.offset);
  }
  return out;
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t index, std::uint32_t label) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), label};
  return std::mt19937_64(seq);
}

void partitions(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

Rational pow_q(const Rational& x, std::size_t k) {
  Rational r(1);
  for (std::size_t i = 0; i < k; ++i) r *= x;
  return r;
}

double window_fraction_exact(const exact::RatPolynomial& g, const DriftTime& T) {
  const IntPolynomial gi = exact::to_primitive(g);
  auto sign_at = [&](const Rational& t) { return sgn(g(t)); };
  // Rational bracket lo < T < hi, with T^k = power_value.
  const Rational& R = T.power_value;
  Rational lo = from_double(T.value * (1 - 1e-12)), hi = from_double(T.value * (1 + 1e-12));
  while (pow_q(lo, T.k) >= R) lo /= 2;
  while (pow_q(hi, T.k) <= R) hi *= 2;
  for (int it = 0; it < 8; ++it) {
    Rational m = (lo + hi) / 2;
    (pow_q(m, T.k) < R ? lo : hi) = m;
  }
  if (gi.degree() <= 0) return sign_at(lo) > 0 ? 1.0 : 0.0;

  exact::SturmSequence sturm(exact::squarefree_part(gi));
  const Rational tol = hi / Rational(Integer(1) << 64);
  std::vector<Rational> roots;
  std::function<void(const Rational&, const Rational&)> isolate = [&](const Rational& a, const Rational& b) {
    int n = sturm.count(a, b);
    if (n == 0) return;
    if (b - a < tol) {
      for (int i = 0; i < n; ++i) roots.push_back((a + b) / 2);
      return;
    }
    Rational m = (a + b) / 2;
    isolate(a, m);
    isolate(m, b);
  };
  isolate(Rational(0), hi);
  std::vector<Rational> cuts{Rational(0)};
  for (const auto& r : roots)
    if (pow_q(r, T.k) < R && r > cuts.back()) cuts.push_back(r);
  double positive = 0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const Rational& a = cuts[i];
    const Rational b = i + 1 < cuts.size() ? cuts[i + 1] : lo;
    if (b <= a) continue;
    if (sign_at((a + b) / 2) > 0) positive += (i + 1 < cuts.size() ? b.get_d() : T.value) - a.get_d();
  }
  return std::clamp(positive / T.value, 0.0, 1.0);
}

}  // namespace

UnipotentFlow UnipotentFlow::standard(std::vector<std::size_t> block_dims) {
  UnipotentFlow f;
  for (auto s : block_dims) {
    if (s == 0) throw PreconditionError("UnipotentFlow: empty Jordan block");
    f.dim += s;
  }
  if (f.dim == 0) throw PreconditionError("UnipotentFlow: dimension 0");
  f.block_dims = std::move(block_dims);
  f.jordan_basis = RationalMatrix::identity(f.dim);
  f.basis_inverse = f.jordan_basis;
  f.generator_log = nilpotent_standard(f.block_dims);
  return f;
}

UnipotentFlow UnipotentFlow::from_log(const RationalMatrix& n) {
  if (!n.is_square() || n.rows() == 0) throw PreconditionError("UnipotentFlow::from_log: need a nonempty square matrix");
  const std::size_t d = n.rows();
  if (!n.pow(static_cast<long long>(d)).is_zero()) throw PreconditionError("UnipotentFlow::from_log: matrix is not nilpotent");

  std::vector<RationalMatrix> kernels{RationalMatrix(d, 0)};
  std::size_t m = 0;
  for (RationalMatrix p = n; kernels.back().cols() < d; p = p * n) {
    kernels.push_back(p.kernel());
    ++m;
  }
  struct Top {
    std::vector<Rational> v;
    std::size_t height;
  };
  std::vector<Top> tops;
  for (std::size_t k = m; k >= 1; --k) {
    std::vector<std::vector<Rational>> cols;
    for (std::size_t j = 0; j < kernels[k - 1].cols(); ++j) cols.push_back(kernels[k - 1].col(j));
    for (const auto& t : tops) {
      std::vector<Rational> x = t.v;
      for (std::size_t s = k; s < t.height; ++s) x = n * x;
      cols.push_back(x);
    }
    std::size_t rank = RationalMatrix::from_columns(cols, d).rank();
    for (std::size_t j = 0; j < kernels[k].cols(); ++j) {
      cols.push_back(kernels[k].col(j));
      std::size_t r = RationalMatrix::from_columns(cols, d).rank();
      if (r > rank) {
        rank = r;
        tops.push_back({kernels[k].col(j), k});
      } else {
        cols.pop_back();
      }
    }
  }

  UnipotentFlow f;
  f.dim = d;
  std::vector<std::vector<Rational>> basis;
  for (const auto& t : tops) {
    std::vector<std::vector<Rational>> chain(t.height);
    chain[t.height - 1] = t.v;
    for (std::size_t i = t.height - 1; i-- > 0;) chain[i] = n * chain[i + 1];
    for (auto& c : chain) basis.push_back(std::move(c));
    f.block_dims.push_back(t.height);
  }
  f.jordan_basis = RationalMatrix::from_columns(basis, d);
  f.basis_inverse = f.jordan_basis.inverse();
  f.generator_log = n;
  return f;
}

std::size_t UnipotentFlow::max_block() const {
  return block_dims.empty() ? 0 : *std::max_element(block_dims.begin(), block_dims.end());
}

std::vector<Rational> UnipotentFlow::coordinates(const std::vector<Rational>& v) const {
  require_vector(*this, v.size());
  return basis_inverse * v;
}

RationalMatrix UnipotentFlow::at(const Rational& t) const {
  RationalMatrix out = RationalMatrix::identity(dim), term = out;
  for (std::size_t k = 1; k < dim; ++k) {
    term = term * generator_log * (t / Rational(static_cast<long>(k)));
    out += term;
  }
  return out;
}

DriftTime drift_time(const UnipotentFlow& flow, const std::vector<Rational>& v) {
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
    throw PreconditionError("drift_time: v must be nonzero");
  auto c = flow.coordinates(v);
  return drift_time_coords(flow, to_double(c), &c);
}

DriftTime drift_time(const UnipotentFlow& flow, const std::vector<double>& v) {
  require_vector(flow, v.size());
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }))
    throw PreconditionError("drift_time: v must be nonzero");
  return drift_time_coords(flow, coords_double(flow, v), nullptr);
}

DriftSplit drift_decomposition(const UnipotentFlow& flow, const std::vector<Rational>& v, const Rational& t) {
  auto c = flow.coordinates(v);
  std::vector<Rational> w_j(flow.dim), perp_j(flow.dim);
  for (const auto& b : blocks_of(flow))
    for (std::size_t i = 0; i < b.size; ++i) {
      Rational s(0), term(1);
      for (std::size_t j = i; j < b.size; ++j) {
        s += c[b.offset + j] * term;
        term *= t / Rational(static_cast<long>(j - i + 1));
      }
      (i == 0 ? w_j : perp_j)[b.offset + i] = s;
    }
  return {t, flow.jordan_basis * w_j, flow.jordan_basis * perp_j};
}

DriftSplitD drift_decomposition(const UnipotentFlow& flow, const std::vector<double>& v, double t) {
  require_vector(flow, v.size());
  auto f = flow_coords(flow, coords_double(flow, v), t);
  std::vector<double> w_j(flow.dim, 0.0), perp_j(flow.dim, 0.0);
  for (const auto& b : blocks_of(flow))
    for (std::size_t i = 0; i < b.size; ++i) (i == 0 ? w_j : perp_j)[b.offset + i] = f[b.offset + i];
  auto p = to_double(flow.jordan_basis);
  return {t, mat_vec(p, w_j), mat_vec(p, perp_j)};
}

double norm(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> to_double(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

exact::RatPolynomial fixed_part_norm2(const UnipotentFlow& flow, const std::vector<Rational>& v) {
  exact::RatPolynomial out;
  for (const auto& p : fixed_part_polys(flow, flow.coordinates(v))) out = out + p * p;
  return out;
}

GoodWindow good_window(const UnipotentFlow& flow, const std::vector<Rational>& v, const Rational& kappa,
                       std::size_t samples, double small_bound) {
  require_vector(flow, v.size());
  if (kappa <= 0) throw PreconditionError("good_window: kappa must be positive");
  if (samples == 0) throw PreconditionError("good_window: need at least one sample");
  if (norm(to_double(v)) > small_bound * (1 + 1e-12)) throw PreconditionError("good_window: |v| exceeds the small-vector bound");
  DriftTime T = drift_time(flow, v);
  if (T.infinite) throw PreconditionError("good_window: v is fixed by the flow");

  GoodWindow out;
  out.T = T.value;
  out.kappa = kappa;
  out.samples = samples;

  auto polys = fixed_part_polys(flow, flow.coordinates(v));
  std::vector<std::vector<double>> pd;
  for (const auto& p : polys) pd.push_back(to_double(p.coeffs()));
  const double k2 = kappa.get_d() * kappa.get_d();
  std::size_t above = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = T.value * (double(s) + 0.5) / double(samples);
    double n2 = 0;
    for (const auto& c : pd) {
      double acc = 0;
      for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
      n2 += acc * acc;
    }
    if (n2 > k2) ++above;
  }
  out.sampled_fraction = double(above) / double(samples);

  if (flow.max_block() <= 3) {
    exact::RatPolynomial g = fixed_part_norm2(flow, v) - exact::RatPolynomial::constant(kappa * kappa);
    out.exact_fraction = window_fraction_exact(g, T);
  }
  return out;
}

Rational frozen_kappa(std::size_t d, const Rational& eps) {
  if (d < 2 || d >= kKappaConstant.size()) throw PreconditionError("frozen_kappa: no calibrated constant for this dimension");
  if (eps <= 0 || eps >= 1) throw PreconditionError("frozen_kappa: eps must lie in (0, 1)");
  if (kKappaConstant[d] <= 0) throw PreconditionError("frozen_kappa: constants are not calibrated");
  return from_double(kKappaConstant[d]) * pow_q(eps, d * (d - 1) / 2);
}

GoodWindow good_window(const UnipotentFlow& flow, const std::vector<Rational>& v, double eps, std::size_t samples,
                       double small_bound) {
  return good_window(flow, v, frozen_kappa(flow.dim, from_double(eps)), samples, small_bound);
}

double max_w_perp(const UnipotentFlow& flow, const std::vector<double>& v, std::size_t grid) {
  require_vector(flow, v.size());
  DriftTime T = drift_time(flow, v);
  if (T.infinite) return 0.0;
  auto c = coords_double(flow, v);
  auto p = to_double(flow.jordan_basis);
  const auto blocks = blocks_of(flow);
  double best = 0;
  for (std::size_t s = 0; s <= grid; ++s) {
    const double t = grid ? T.value * double(s) / double(grid) : T.value;
    auto f = flow_coords(flow, c, t);
    for (const auto& b : blocks) f[b.offset] = 0;
    best = std::max(best, norm(mat_vec(p, f)));
  }
  return best;
}

double drift_ratio(const UnipotentFlow& flow, const std::vector<Rational>& v, std::size_t grid) {
  auto vd = to_double(v);
  return max_w_perp(flow, vd, grid) / std::pow(norm(vd), 1.0 / double(flow.dim));
}

double kappa_ratio(const UnipotentFlow& flow, const std::vector<Rational>& v, double eps, std::size_t samples) {
  if (!(eps > 0 && eps < 1)) throw PreconditionError("kappa_ratio: eps must lie in (0, 1)");
  DriftTime T = drift_time(flow, v);
  if (T.infinite) throw PreconditionError("kappa_ratio: v is fixed by the flow");
  std::vector<std::vector<double>> pd;
  for (const auto& p : fixed_part_polys(flow, flow.coordinates(v))) pd.push_back(to_double(p.coeffs()));
  std::vector<double> values(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = T.value * (double(s) + 0.5) / double(samples);
    double n2 = 0;
    for (const auto& c : pd) {
      double acc = 0;
      for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
      n2 += acc * acc;
    }
    values[s] = std::sqrt(n2);
  }
  const std::size_t m = static_cast<std::size_t>(std::floor(eps * double(samples)));
  std::nth_element(values.begin(), values.begin() + m, values.end());
  const std::size_t d = flow.dim;
  return values[m] / std::pow(eps, double(d * (d - 1) / 2));
}

ScaleSweep scale_sweep(std::size_t d, const std::vector<double>& radii, std::size_t directions, std::uint64_t seed,
                       std::size_t grid) {
  if (d < 2) throw PreconditionError("scale_sweep: need d >= 2");
  return scale_sweep(UnipotentFlow::standard({d}), radii, directions, seed, grid);
}

ScaleSweep scale_sweep(const UnipotentFlow& flow, const std::vector<double>& radii, std::size_t directions,
                       std::uint64_t seed, std::size_t grid) {
  if (radii.size() < 2 || directions == 0) throw PreconditionError("scale_sweep: need two radii and one direction");
  ScaleSweep out;
  out.d = flow.dim;
  out.directions = directions;
  out.target = 1.0 / double(flow.dim);
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < directions; ++i) dirs.push_back(to_double(random_vector(flow, 1.0, seed, i)));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double r : radii) {
    ScaleRow row{r, 0.0};
    for (const auto& u : dirs) {
      std::vector<double> v(u);
      for (auto& x : v) x *= r;
      row.max_w_perp = std::max(row.max_w_perp, max_w_perp(flow, v, grid));
    }
    const double x = std::log(r), y = std::log(row.max_w_perp);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    out.rows.push_back(row);
  }
  const double n = double(radii.size());
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

RandomInstance random_instance(std::size_t d, double radius, std::uint64_t seed, std::uint64_t index) {
  if (d < 2) throw PreconditionError("random_instance: need d >= 2");
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  partitions(d, d, cur, parts);
  parts.pop_back();  // 1 + 1 + ... + 1 is fixed by the flow
  auto rng = seeded(seed, index, 0x6872);
  std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
  UnipotentFlow flow = UnipotentFlow::standard(parts[pick(rng)]);
  auto v = random_vector(flow, radius, rng(), index);
  return {std::move(flow), std::move(v)};
}

std::vector<Rational> random_vector(const UnipotentFlow& flow, double radius, std::uint64_t seed, std::uint64_t index) {
  if (!(radius > 0)) throw PreconditionError("random_vector: radius must be positive");
  auto rng = seeded(seed, index, 0x7663);
  std::normal_distribution<double> g;
  for (;;) {
    std::vector<double> x(flow.dim);
    for (auto& c : x) c = g(rng);
    const double n = norm(x);
    if (n == 0) continue;
    std::vector<Rational> v;
    for (double c : x) v.push_back(from_double(c * radius / n));
    if (!drift_time(flow, v).infinite) return v;
  }
}

double frozen_drift_constant(std::size_t d) {
  if (d < 2 || d >= kDriftConstant.size() || kDriftConstant[d] <= 0)
    throw PreconditionError("frozen_drift_constant: no calibrated constant for this dimension");
  return kDriftConstant[d];
}

namespace {
double log_uniform_radius(std::size_t i, std::size_t count) {
  return std::pow(10.0, -3.0 - 2.0 * (double(i) + 0.5) / double(count));
}
}  // namespace

DriftBoundCheck check_drift_bound(std::size_t d, std::size_t count, std::uint64_t seed, std::size_t grid) {
  DriftBoundCheck out;
  out.d = d;
  out.instances = count;
  out.constant = frozen_drift_constant(d);
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = random_instance(d, log_uniform_radius(i, count), seed, d * 1000003 + i);
    const double r = drift_ratio(inst.flow, inst.v, grid);
    out.max_ratio = std::max(out.max_ratio, r);
    if (r > out.constant) ++out.violations;
  }
  return out;
}

WindowCheck check_good_window(std::size_t d, double eps, std::size_t count, std::uint64_t seed, std::size_t samples) {
  WindowCheck out;
  out.d = d;
  out.eps = eps;
  out.instances = count;
  for (std::size_t i = 0; i < count; ++i) {
    auto inst = random_instance(d, log_uniform_radius(i, count), seed, d * 1000003 + i);
    GoodWindow g = good_window(inst.flow, inst.v, eps, samples);
    if (g.exact_fraction) ++out.exact_paths;
    out.min_fraction = std::min(out.min_fraction, g.fraction());
    if (g.fraction() < 1 - eps) ++out.failures;
  }
  return out;
}

}  // namespace nilrigid::hprinciple
