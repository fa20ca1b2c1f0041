#include "nilrigid/heisenberg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <mutex>
#include <random>
#include <thread>

namespace nilrigid::heisenberg {

using namespace exact;

namespace {

constexpr std::size_t kN = 6;
constexpr std::uint32_t kMuLabel = 0x6d75u;  // stream label for mu sampling

Rational dyadic64(std::uint64_t v) {
  Integer num(static_cast<unsigned long>(v));
  Integer den(1);
  den <<= 64;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Vec6 vec6(long prec) {
  return {BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec), BigFloat(prec)};
}

std::vector<IntVec> box_points(int n_box) {
  std::vector<IntVec> out;
  for (int a = -n_box; a <= n_box; ++a)
    for (int b = -n_box; b <= n_box; ++b) out.push_back({a, b});
  return out;
}

// Runs body(i) for i in [0, n) on `threads` workers, strided.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex m;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(m);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// Integer matrix in MPFR, zeros skipped in products.
struct FloatMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<BigFloat> v;
  std::vector<bool> nz;

  FloatMatrix(const RationalMatrix& m, long prec) : rows(m.rows()), cols(m.cols()) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        v.emplace_back(m(i, j), prec);
        nz.push_back(m(i, j) != 0);
      }
  }
  void apply(const Vec6& x, Vec6& out, BigFloat& t) const {
    for (std::size_t i = 0; i < kN; ++i) {
      mpfr_set_zero(out[i].get(), 1);
      for (std::size_t j = 0; j < kN; ++j) {
        if (!nz[i * cols + j]) continue;
        mpfr_mul(t.get(), v[i * cols + j].get(), x[j].get(), MPFR_RNDN);
        mpfr_add(out[i].get(), out[i].get(), t.get(), MPFR_RNDN);
      }
    }
  }
};

// In-place representative of v modulo 1 in [-1/2, 1/2).
void frac_into(BigFloat& out, const BigFloat& v, const BigFloat& half) {
  mpfr_add(out.get(), v.get(), half.get(), MPFR_RNDN);
  mpfr_floor(out.get(), out.get());
  mpfr_sub(out.get(), v.get(), out.get(), MPFR_RNDN);
}

// Scratch space for the reduction of one point.
struct Reducer {
  Vec6 fx, fy;
  BigFloat w, t, half;
  explicit Reducer(long prec) : fx(vec6(prec)), fy(vec6(prec)), w(prec), t(prec), half(0.5, prec) {}

  // (x, y, z) -> representative, written into (rx, ry, rz).
  void reduce(const Vec6& x, const Vec6& y, const BigFloat& z, Vec6& rx, Vec6& ry, BigFloat& rz) {
    for (std::size_t i = 0; i < kN; ++i) {
      frac_into(fx[i], x[i], half);
      frac_into(fy[i], y[i], half);
    }
    mpfr_set(w.get(), z.get(), MPFR_RNDN);
    for (std::size_t i = 0; i < kN; ++i) {
      mpfr_mul(t.get(), x[i].get(), fy[i].get(), MPFR_RNDN);
      mpfr_add(w.get(), w.get(), t.get(), MPFR_RNDN);
      mpfr_mul(t.get(), fx[i].get(), y[i].get(), MPFR_RNDN);
      mpfr_sub(w.get(), w.get(), t.get(), MPFR_RNDN);
    }
    for (std::size_t i = 0; i < kN; ++i) {
      mpfr_set(rx[i].get(), fx[i].get(), MPFR_RNDN);
      mpfr_set(ry[i].get(), fy[i].get(), MPFR_RNDN);
    }
    frac_into(rz, w, half);
  }
};

double wrapped_gap(const BigFloat& a, const BigFloat& b, BigFloat& t, BigFloat& u, const BigFloat& half) {
  mpfr_sub(t.get(), a.get(), b.get(), MPFR_RNDN);
  frac_into(u, t, half);
  return std::fabs(mpfr_get_d(u.get(), MPFR_RNDN));
}

RationalMatrix beta(const KatokPair& pair, const IntVec& n) { return pair.A.pow(n[0]) * pair.B.pow(n[1]); }

// Farey neighbours of x among fractions with denominator <= bound
// (x itself when it qualifies).
std::vector<Rational> farey_neighbours(const Rational& x, const Integer& bound) {
  Integer h2(0), k2(1), h1(1), k1(0);  // convergents n-2, n-1
  Rational r = x;
  while (true) {
    Integer a = floor(r);
    Integer h = a * h1 + h2, k = a * k1 + k2;
    if (k > bound) {
      Integer j = (bound - k2) / k1;
      std::vector<Rational> out{Rational(h1, k1)};
      if (j * k1 + k2 > 0) out.emplace_back(j * h1 + h2, j * k1 + k2);
      for (auto& q : out) q.canonicalize();
      return out;
    }
    h2 = h1;
    k2 = k1;
    h1 = h;
    k1 = k;
    Rational f = r - Rational(a);
    if (f == 0) {
      Rational q(h1, k1);
      q.canonicalize();
      return {q};
    }
    r = 1 / f;
  }
}

}  // namespace

MuSample mu_sample(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), kMuLabel};
  std::mt19937_64 gen(seq);
  MuSample s;
  s.seed = seed;
  s.index = index;
  s.u = dyadic64(gen());
  const Rational half(1, 2);
  for (auto& y : s.y) y = dyadic64(gen()) - half;
  return s;
}

std::vector<MuSample> sample_mu(std::uint64_t seed, std::size_t count, std::uint64_t first) {
  if (count == 0) throw PreconditionError("sample_mu: count must be >= 1");
  std::vector<MuSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(mu_sample(seed, first + i));
  return out;
}

RealizedSample realize(const Circle& c, const MuSample& s, long bits) {
  BigFloat theta = BigFloat::pi(bits) * BigFloat(Rational(2) * s.u, bits);
  Vec6 x = circle_point(c, theta);
  Vec6 y = vec6(bits);
  for (std::size_t i = 0; i < kN; ++i) y[i] = BigFloat(s.y[i], bits);
  HeisPoint p = section_map(c, x, y);
  return {theta, x, p};
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

EquivarianceReport check_equivariance(const KatokPair& pair, const action::AutoAction& alpha, const Circle& circle,
                                      const std::vector<MuSample>& samples, int n_box, long bits, unsigned threads) {
  if (n_box < 0) throw PreconditionError("check_equivariance: n_box must be >= 0");
  if (alpha.dim() != 13 || alpha.rank() != 2) throw PreconditionError("check_equivariance: expected a Z^2 action on Heis13");
  threads = worker_count(threads);
  EquivarianceReport rep;
  rep.bits = bits;
  rep.n_box = n_box;
  rep.samples = samples.size();

  std::vector<RealizedSample> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back(realize(circle, s, bits));

  const auto ns = box_points(n_box);
  rep.per_n.resize(ns.size());
  std::vector<std::size_t> worst(ns.size(), 0);

  parallel_for(ns.size(), threads, [&](std::size_t idx) {
    const IntVec& n = ns[idx];
    RationalMatrix M = alpha.element(n);
    for (std::size_t i = 0; i < 13; ++i)
      for (std::size_t j = 0; j < 13; ++j) {
        bool block = (i < 6 && j < 6) || (i >= 6 && i < 12 && j >= 6 && j < 12);
        if (!block && M(i, j) != (i == j && i == 12 ? 1 : 0))
          throw PreconditionError("check_equivariance: alpha^n is not block-diagonal (beta, hat beta, 1)");
      }
    FloatMatrix X(M.block(0, 0, 6, 6), bits), Y(M.block(6, 6, 6, 6), bits);
    RationalMatrix bn = beta(pair, n);
    RationalMatrix bhat = beta(pair, {-n[0], -n[1]}).transpose();
    FloatMatrix Bn(bn, bits), Bhat(bhat, bits);

    Reducer red(bits);
    Vec6 ax = vec6(bits), ay = vec6(bits), lx = vec6(bits), ly = vec6(bits);
    Vec6 bx = vec6(bits), by = vec6(bits), rx = vec6(bits), ry = vec6(bits);
    BigFloat lz(bits), rz(bits), sz(bits), t(bits), u(bits), half(0.5, bits);
    double max_err = 0;
    std::size_t arg = 0;
    for (std::size_t s = 0; s < pts.size(); ++s) {
      const HeisPoint& p = pts[s].point;
      // alpha^n psi(x, y), reduced.
      X.apply(p.x, ax, t);
      Y.apply(p.y, ay, t);
      red.reduce(ax, ay, p.z, lx, ly, lz);
      // psi(beta^n x, {hat beta^n y}): z = (beta^n x).{hat beta^n y}.
      Bn.apply(p.x, bx, t);
      Bhat.apply(p.y, by, t);
      for (std::size_t i = 0; i < kN; ++i) {
        frac_into(u, by[i], half);
        mpfr_set(by[i].get(), u.get(), MPFR_RNDN);
      }
      mpfr_set_zero(sz.get(), 1);
      for (std::size_t i = 0; i < kN; ++i) {
        mpfr_mul(t.get(), bx[i].get(), by[i].get(), MPFR_RNDN);
        mpfr_add(sz.get(), sz.get(), t.get(), MPFR_RNDN);
      }
      red.reduce(bx, by, sz, rx, ry, rz);
      double e = wrapped_gap(lz, rz, t, u, half);
      for (std::size_t i = 0; i < kN; ++i) {
        e = std::max(e, wrapped_gap(lx[i], rx[i], t, u, half));
        e = std::max(e, wrapped_gap(ly[i], ry[i], t, u, half));
      }
      if (e > max_err) {
        max_err = e;
        arg = s;
      }
    }
    rep.per_n[idx] = {n, max_err};
    worst[idx] = arg;
  });

  rep.worst_n = ns.empty() ? IntVec{} : ns[0];
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (rep.per_n[i].max_error > rep.max_error) {
      rep.max_error = rep.per_n[i].max_error;
      rep.worst_n = ns[i];
      rep.worst_sample = worst[i];
    }
  return rep;
}

Compactness h_orbit_compactness(const HeisPoint& p, const Integer& denominator_bound, double tol) {
  if (denominator_bound < 1) throw PreconditionError("h_orbit_compactness: denominator bound must be >= 1");
  const Rational tq(BigFloat(tol, 64).to_rational());
  std::vector<std::vector<Rational>> cands(kN);
  std::vector<Rational> xs;
  for (std::size_t i = 0; i < kN; ++i) {
    Rational x = p.x[i].to_rational();
    xs.push_back(x);
    for (const auto& q : farey_neighbours(x, denominator_bound)) {
      Rational d = x - q;
      if (abs(d) <= tq) cands[i].push_back(q);
    }
    if (cands[i].empty()) return {};
  }
  Compactness best;
  std::vector<std::size_t> pick(kN, 0);
  while (true) {
    Integer q(1);
    for (std::size_t i = 0; i < kN; ++i) q = lcm(q, cands[i][pick[i]].get_den());
    if (q <= denominator_bound && (!best.compact || q < *best.denominator)) {
      best.compact = true;
      best.denominator = q;
      best.witness.clear();
      for (std::size_t i = 0; i < kN; ++i) best.witness.push_back(cands[i][pick[i]]);
    }
    std::size_t i = 0;
    while (i < kN && ++pick[i] == cands[i].size()) pick[i++] = 0;
    if (i == kN) break;
  }
  return best;
}

CompactnessScan compactness_scan(const Circle& c, const std::vector<MuSample>& samples, const Integer& denominator_bound,
                                 long bits, unsigned threads) {
  CompactnessScan scan;
  scan.samples = samples.size();
  scan.denominator_bound = denominator_bound;
  std::vector<char> hit(samples.size(), 0);
  parallel_for(samples.size(), worker_count(threads), [&](std::size_t i) {
    hit[i] = h_orbit_compactness(realize(c, samples[i], bits).point, denominator_bound).compact ? 1 : 0;
  });
  for (char h : hit) scan.not_detected += h ? 0 : 1;
  return scan;
}

double CharacterRow::abs() const { return std::hypot(re, im); }

TorusFactorReport torus_factor_report(const KatokPair& pair, const Circle& c, const std::vector<MuSample>& samples,
                                      int n_box, int character_box, long bits, unsigned threads) {
  using cd = std::complex<double>;
  if (samples.empty()) throw PreconditionError("torus_factor_report: no samples");
  if (character_box < 0 || character_box > 4) throw PreconditionError("torus_factor_report: character_box must be in 0..4");
  threads = worker_count(threads);
  const double two_pi = 2 * std::acos(-1.0);
  const int K = character_box, W = 2 * K + 1;
  const std::size_t N = samples.size();
  TorusFactorReport rep;
  rep.samples = N;
  rep.character_box = K;
  rep.threshold = 4.0 / std::sqrt(static_cast<double>(N));

  // (i) y-block characters. Index k by its base-W digits k_j + K.
  std::size_t total = 1;
  for (std::size_t j = 0; j < kN; ++j) total *= static_cast<std::size_t>(W);
  std::vector<cd> sums(total, cd(0, 0));
  const std::size_t first_idx = total / static_cast<std::size_t>(W) * static_cast<std::size_t>(K);
  constexpr std::size_t kChunk = 512;
  const std::size_t chunks = (N + kChunk - 1) / kChunk;
  // Chunks are summed in a fixed order so the totals do not depend on the
  // thread count.
  for (std::size_t wave = 0; wave < chunks; wave += threads) {
    std::size_t nw = std::min<std::size_t>(threads, chunks - wave);
    std::vector<std::vector<cd>> part(nw, std::vector<cd>(total, cd(0, 0)));
    parallel_for(nw, threads, [&](std::size_t w) {
      std::vector<cd>& acc = part[w];
      std::size_t lo = (wave + w) * kChunk, hi = std::min(N, lo + kChunk);
      // Plain real arithmetic: std::complex products go through the
      // Annex G slow path.
      std::vector<double> er(kN * static_cast<std::size_t>(W)), ei(er.size());
      std::array<double, kN + 1> pr{}, pi{};
      std::vector<double> ar(total, 0.0), ai(total, 0.0);
      for (std::size_t s = lo; s < hi; ++s) {
        for (std::size_t j = 0; j < kN; ++j) {
          double y = samples[s].y[j].get_d();
          for (int m = -K; m <= K; ++m) {
            std::size_t at = j * static_cast<std::size_t>(W) + static_cast<std::size_t>(m + K);
            er[at] = std::cos(two_pi * m * y);
            ei[at] = std::sin(two_pi * m * y);
          }
        }
        auto step = [&](std::size_t l, std::size_t at) {
          pr[l + 1] = pr[l] * er[at] - pi[l] * ei[at];
          pi[l + 1] = pr[l] * ei[at] + pi[l] * er[at];
        };
        // Depth-first over k with k_1 >= 0 (the rest are conjugates), with
        // running partial products.
        std::vector<int> d(kN, 0);
        d[0] = K;
        pr[0] = 1;
        pi[0] = 0;
        for (std::size_t j = 0; j < kN; ++j) step(j, j * static_cast<std::size_t>(W) + static_cast<std::size_t>(d[j]));
        std::size_t idx = first_idx;
        while (true) {
          ar[idx] += pr[kN];
          ai[idx] += pi[kN];
          std::size_t j = kN;
          while (j > 0 && d[j - 1] == W - 1) {
            d[j - 1] = 0;
            --j;
          }
          if (j == 0) break;
          ++d[j - 1];
          for (std::size_t l = j - 1; l < kN; ++l) step(l, l * static_cast<std::size_t>(W) + static_cast<std::size_t>(d[l]));
          ++idx;
        }
      }
      for (std::size_t i = 0; i < total; ++i) acc[i] = cd(ar[i], ai[i]);
    });
    for (const auto& p : part)
      for (std::size_t i = 0; i < total; ++i) sums[i] += p[i];
  }
  auto digits = [&](std::size_t idx) {
    std::array<int, 6> k{};
    for (std::size_t j = kN; j-- > 0;) {
      k[j] = static_cast<int>(idx % static_cast<std::size_t>(W)) - K;
      idx /= static_cast<std::size_t>(W);
    }
    return k;
  };
  std::size_t zero_idx = 0;
  for (std::size_t j = 0; j < kN; ++j) zero_idx = zero_idx * static_cast<std::size_t>(W) + static_cast<std::size_t>(K);
  rep.y_characters.push_back({digits(zero_idx), sums[zero_idx].real() / double(N), sums[zero_idx].imag() / double(N)});
  for (std::size_t i = zero_idx + 1; i < total; ++i) {
    CharacterRow r{digits(i), sums[i].real() / double(N), sums[i].imag() / double(N)};
    rep.max_nontrivial_y = std::max(rep.max_nontrivial_y, r.abs());
    rep.y_characters.push_back(r);
  }

  // (ii) x-marginal on the circle.
  std::vector<double> dist(N);
  std::vector<std::array<double, 6>> xd(N);
  parallel_for(N, threads, [&](std::size_t s) {
    RealizedSample r = realize(c, samples[s], bits);
    dist[s] = circle_residual(c, r.x).to_double();
    for (std::size_t j = 0; j < kN; ++j) xd[s][j] = r.x[j].to_double();
  });
  for (double d : dist) rep.max_circle_distance = std::max(rep.max_circle_distance, d);

  const double rho = c.rho.get_d();
  std::array<double, 6> re{}, im{};
  for (std::size_t j = 0; j < kN; ++j) {
    re[j] = c.plane.re[j].mid_double();
    im[j] = c.plane.im[j].mid_double();
  }
  rep.x_characters.push_back({std::array<int, 6>{}, 1.0, 0.0, 1.0});
  for (std::size_t idx = 0; idx < 729; ++idx) {
    std::array<int, 6> k{};
    std::size_t t = idx;
    for (std::size_t j = kN; j-- > 0;) {
      k[j] = static_cast<int>(t % 3) - 1;
      t /= 3;
    }
    // one of each +-k: first nonzero entry positive
    auto first = std::find_if(k.begin(), k.end(), [](int v) { return v != 0; });
    if (first == k.end() || *first < 0) continue;
    cd acc(0, 0);
    for (std::size_t s = 0; s < N; ++s) {
      double kx = 0;
      for (std::size_t j = 0; j < kN; ++j) kx += k[j] * xd[s][j];
      acc += std::polar(1.0, two_pi * kx);
    }
    double ka = 0, kb = 0;
    for (std::size_t j = 0; j < kN; ++j) {
      ka += k[j] * re[j];
      kb += k[j] * im[j];
    }
    double expected = std::cyl_bessel_j(0.0, two_pi * rho * std::hypot(ka, kb));
    rep.x_characters.push_back({k, acc.real() / double(N), acc.imag() / double(N), expected});
  }

  // (iii) Birkhoff averages of y-block unit characters along orbits.
  const std::size_t orbit_samples = std::min<std::size_t>(N, 256);
  const auto ns = box_points(n_box);
  std::vector<RationalMatrix> bh;
  for (const auto& n : ns) bh.push_back(beta(pair, {-n[0], -n[1]}).transpose());
  // phases[s][n][j] = e({hat beta^n y}_j)
  std::vector<std::vector<std::array<cd, 6>>> ph(orbit_samples, std::vector<std::array<cd, 6>>(ns.size()));
  parallel_for(orbit_samples, threads, [&](std::size_t s) {
    for (std::size_t a = 0; a < ns.size(); ++a) {
      std::vector<Rational> y(samples[s].y.begin(), samples[s].y.end());
      std::vector<Rational> v = bh[a] * y;
      for (std::size_t j = 0; j < kN; ++j) ph[s][a][j] = std::polar(1.0, two_pi * centered_frac(v[j]).get_d());
    }
  });
  for (int R = 1; R <= n_box; ++R) {
    BirkhoffRow row;
    row.radius = R;
    row.count = static_cast<std::size_t>((2 * R + 1) * (2 * R + 1));
    row.mc_rate = 1.0 / std::sqrt(static_cast<double>(row.count));
    double total_abs = 0;
    for (std::size_t s = 0; s < orbit_samples; ++s)
      for (std::size_t j = 0; j < kN; ++j) {
        cd acc(0, 0);
        for (std::size_t a = 0; a < ns.size(); ++a)
          if (std::abs(ns[a][0]) <= R && std::abs(ns[a][1]) <= R) acc += ph[s][a][j];
        total_abs += std::abs(acc) / double(row.count);
      }
    row.mean_abs = total_abs / double(orbit_samples * kN);
    rep.birkhoff.push_back(row);
  }
  return rep;
}

CenterTranslationReport center_translation_check(const Circle& c, const std::vector<MuSample>& samples,
                                                 const Rational& t, long bits, double tol) {
  CenterTranslationReport rep;
  rep.t = t;
  rep.samples = samples.size();
  BigFloat tf(t, bits);
  for (const auto& s : samples) {
    HeisPoint p = realize(c, s, bits).point;
    if (on_section(c, p, tol)) ++rep.on_section_before;
    p.z += tf;
    if (!on_section(c, p, tol)) ++rep.off_section_after;
  }
  return rep;
}

namespace {

std::string header_lines(const CsvHeader& h) {
  std::string out;
  for (const auto& [k, v] : h) out += "# " + k + "=" + v + "\n";
  return out;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string equivariance_csv(const EquivarianceReport& r, const CsvHeader& header) {
  std::string out = header_lines(header) + "n1,n2,max_error\n";
  for (const auto& row : r.per_n)
    out += std::to_string(row.n[0]) + "," + std::to_string(row.n[1]) + "," + fmt("%.6e", row.max_error) + "\n";
  return out;
}

std::string character_csv(const TorusFactorReport& r, const CsvHeader& header) {
  std::string out = header_lines(header) + "block,k1,k2,k3,k4,k5,k6,re,im,abs,expected\n";
  auto row = [&](const char* block, const std::array<int, 6>& k, double re, double im, double expected) {
    out += block;
    for (int v : k) out += "," + std::to_string(v);
    out += "," + fmt("%.9f", re) + "," + fmt("%.9f", im) + "," + fmt("%.9f", std::hypot(re, im)) + "," +
           fmt("%.9f", expected) + "\n";
  };
  for (std::size_t i = 0; i < r.y_characters.size(); ++i) {
    const auto& c = r.y_characters[i];
    row("y", c.k, c.re, c.im, i == 0 ? 1.0 : 0.0);
  }
  for (const auto& c : r.x_characters) row("x", c.k, c.re, c.im, c.expected);
  return out;
}

std::string orbit_trace_csv(const action::AutoAction& alpha, const Circle& c, const MuSample& s, int n_box, long bits,
                            const CsvHeader& header) {
  std::string out = header_lines(header) + "n1,n2,x1,x2,x3,x4,x5,x6,y1,y2,y3,y4,y5,y6,z\n";
  HeisPoint p = realize(c, s, bits).point;
  for (const auto& n : box_points(n_box)) {
    RationalMatrix M = alpha.element(n);
    HeisPoint q(bits);
    for (std::size_t i = 0; i < 13; ++i) {
      BigFloat acc(bits);
      for (std::size_t j = 0; j < 13; ++j) {
        if (M(i, j) == 0) continue;
        const BigFloat& v = j < 6 ? p.x[j] : j < 12 ? p.y[j - 6] : p.z;
        acc += BigFloat(M(i, j), bits) * v;
      }
      (i < 6 ? q.x[i] : i < 12 ? q.y[i - 6] : q.z) = acc;
    }
    HeisPoint r = heis_reduce(q);
    out += std::to_string(n[0]) + "," + std::to_string(n[1]);
    for (const auto& v : r.x) out += "," + fmt("%.17g", v.to_double());
    for (const auto& v : r.y) out += "," + fmt("%.17g", v.to_double());
    out += "," + fmt("%.17g", r.z.to_double()) + "\n";
  }
  return out;
}

}  // namespace nilrigid::heisenberg
