#include "nilrigid/exact/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>

namespace nilrigid::exact {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using ModPoly = std::vector<u64>;  // low degree first, trimmed

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<u128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

ModPoly reduce(const IntPolynomial& f, u64 p) {
  ModPoly r(f.coeffs().size());
  Integer t;
  for (std::size_t k = 0; k < r.size(); ++k) {
    mpz_fdiv_r_ui(t.get_mpz_t(), f.coeffs()[k].get_mpz_t(), p);
    r[k] = t.get_ui();
  }
  trim(r);
  return r;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()));
  for (std::size_t k = 0; k < r.size(); ++k) {
    u64 x = k < a.size() ? a[k] : 0, y = k < b.size() ? b[k] : 0;
    r[k] = x >= y ? x - y : x + p - y;
  }
  trim(r);
  return r;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

void divmod(const ModPoly& a, const ModPoly& b, u64 p, ModPoly* q, ModPoly* r) {
  ModPoly rem = a;
  const int db = deg(b);
  ModPoly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  u64 inv = invmod(b.back(), p);
  for (int k = deg(rem); k >= db; --k) {
    u64 f = mulmod(rem[static_cast<std::size_t>(k)], inv, p);
    if (!f) continue;
    quo[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) {
      u64& t = rem[static_cast<std::size_t>(k - db + j)];
      t = (t + p - mulmod(f, b[static_cast<std::size_t>(j)], p)) % p;
    }
  }
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

ModPoly mod(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

ModPoly monic(const ModPoly& f, u64 p) {
  if (f.empty()) return f;
  u64 inv = invmod(f.back(), p);
  ModPoly r = f;
  for (auto& c : r) c = mulmod(c, inv, p);
  return r;
}

ModPoly gcd(ModPoly a, ModPoly b, u64 p) {
  while (!b.empty()) {
    ModPoly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

ModPoly derivative(const ModPoly& f, u64 p) {
  if (f.size() <= 1) return {};
  ModPoly r(f.size() - 1);
  for (std::size_t k = 1; k < f.size(); ++k) r[k - 1] = mulmod(f[k], k % p, p);
  trim(r);
  return r;
}

ModPoly powmod_poly(ModPoly base, const Integer& e, const ModPoly& m, u64 p) {
  ModPoly r{1};
  base = mod(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base, p), m, p);
  }
  return r;
}

// Distinct-degree factorization of a monic squarefree f.
std::vector<std::pair<ModPoly, int>> distinct_degree(ModPoly f, u64 p) {
  std::vector<std::pair<ModPoly, int>> out;
  ModPoly h{0, 1};
  const ModPoly x{0, 1};
  int i = 0;
  while (deg(f) >= 2 * (i + 1)) {
    ++i;
    h = powmod_poly(h, Integer(p), f, p);
    ModPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      out.emplace_back(g, i);
      ModPoly q;
      divmod(f, g, p, &q, nullptr);
      f = monic(q, p);
      h = mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, deg(f));
  return out;
}

// Cantor-Zassenhaus equal-degree splitting (odd p).
void equal_degree(const ModPoly& f, int d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> dist(0, p - 1);
  for (;;) {
    ModPoly a(static_cast<std::size_t>(deg(f)));
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (deg(a) < 1) continue;
    ModPoly b = powmod_poly(a, e, f, p);
    b = sub(b, ModPoly{1}, p);
    ModPoly g = gcd(f, b, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      ModPoly q;
      divmod(f, g, p, &q, nullptr);
      equal_degree(g, d, p, rng, out);
      equal_degree(monic(q, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<ModPoly> factor_mod_p(const ModPoly& f, u64 p) {
  std::mt19937_64 rng(0x5eed0000ULL + p);
  std::vector<ModPoly> out;
  for (auto& [g, d] : distinct_degree(monic(f, p), p)) equal_degree(g, d, p, rng, out);
  return out;
}

// ---- Hensel lifting over Z/p^k with mpz coefficients ----

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zmod(const ZPoly& f, const Integer& m) {
  ZPoly r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) mpz_fdiv_r(r[k].get_mpz_t(), f[k].get_mpz_t(), m.get_mpz_t());
  ztrim(r);
  return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

ZPoly from_mod(const ModPoly& f) {
  ZPoly r(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) r[k] = static_cast<unsigned long>(f[k]);
  return r;
}

ModPoly to_mod(const ZPoly& f, u64 p) {
  ModPoly r(f.size());
  Integer t;
  for (std::size_t k = 0; k < f.size(); ++k) {
    mpz_fdiv_r_ui(t.get_mpz_t(), f[k].get_mpz_t(), p);
    r[k] = t.get_ui();
  }
  trim(r);
  return r;
}

// Extended gcd mod p: s*a + t*b = 1.
void bezout(const ModPoly& a, const ModPoly& b, u64 p, ModPoly& s, ModPoly& t) {
  ModPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    ModPoly q, r;
    divmod(r0, r1, p, &q, &r);
    ModPoly s2 = sub(s0, mul(q, s1, p), p);
    ModPoly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (deg(r0) != 0) throw std::logic_error("bezout: factors not coprime mod p");
  u64 inv = invmod(r0[0], p);
  s = s0;
  t = t0;
  for (auto& c : s) c = mulmod(c, inv, p);
  for (auto& c : t) c = mulmod(c, inv, p);
}

// Lifts f = g*h (mod p), g monic, to modulus p^k. f is an integer polynomial
// (reduced mod p^k by the caller as needed); h absorbs the leading coefficient.
void hensel_two(const ZPoly& f, ZPoly& g, ZPoly& h, u64 p, unsigned k) {
  ModPoly s, t;
  bezout(to_mod(g, p), to_mod(h, p), p, s, t);
  const ModPoly gp = to_mod(g, p);
  Integer pj = p;
  for (unsigned j = 1; j < k; ++j) {
    Integer pj1 = pj * p;
    ZPoly gh = zmul(g, h);
    ZPoly diff(std::max(f.size(), gh.size()));
    for (std::size_t i = 0; i < diff.size(); ++i)
      diff[i] = (i < f.size() ? f[i] : Integer(0)) - (i < gh.size() ? gh[i] : Integer(0));
    diff = zmod(diff, pj1);
    for (auto& c : diff) c /= pj;  // exact: f = gh mod p^j
    ModPoly e = to_mod(diff, p);
    ModPoly q, et;
    divmod(mul(e, t, p), gp, p, &q, &et);
    ModPoly qh = mul(q, to_mod(h, p), p);
    ModPoly es = mul(e, s, p);
    ModPoly sigma(std::max(es.size(), qh.size()), 0);
    for (std::size_t i = 0; i < sigma.size(); ++i)
      sigma[i] = ((i < es.size() ? es[i] : 0) + (i < qh.size() ? qh[i] : 0)) % p;
    trim(sigma);
    ZPoly tau_z = from_mod(et), sigma_z = from_mod(sigma);
    g.resize(std::max(g.size(), tau_z.size()));
    for (std::size_t i = 0; i < tau_z.size(); ++i) g[i] += pj * tau_z[i];
    h.resize(std::max(h.size(), sigma_z.size()));
    for (std::size_t i = 0; i < sigma_z.size(); ++i) h[i] += pj * sigma_z[i];
    g = zmod(g, pj1);
    h = zmod(h, pj1);
    pj = pj1;
  }
}

// Lifts f = lc * prod(facs) (mod p) to mod p^k; facs monic mod p on input, monic mod p^k on output.
std::vector<ZPoly> hensel_multi(const ZPoly& f, const std::vector<ModPoly>& facs, u64 p, unsigned k,
                                const Integer& pk) {
  if (facs.size() == 1) {
    // The single factor is f / lc reduced mod p^k.
    Integer inv;
    Integer lc = f.back();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
    ZPoly g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] * inv;
    return {zmod(g, pk)};
  }
  const std::size_t half = facs.size() / 2;
  std::vector<ModPoly> left(facs.begin(), facs.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<ModPoly> right(facs.begin() + static_cast<std::ptrdiff_t>(half), facs.end());
  ModPoly gl{1}, gr{1};
  for (const auto& a : left) gl = mul(gl, a, p);
  for (const auto& a : right) gr = mul(gr, a, p);
  u64 lcp = to_mod(ZPoly{f.back()}, p)[0];
  ModPoly hr = gr;
  for (auto& c : hr) c = mulmod(c, lcp, p);
  ZPoly g = from_mod(gl), h = from_mod(hr);
  hensel_two(f, g, h, p, k);
  std::vector<ZPoly> out = hensel_multi(g, left, p, k, pk);
  std::vector<ZPoly> rest = hensel_multi(h, right, p, k, pk);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

IntPolynomial symmetric(const ZPoly& f, const Integer& m) {
  Integer half = m / 2;
  std::vector<Integer> c(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    mpz_fdiv_r(c[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
    if (c[i] > half) c[i] -= m;
  }
  return IntPolynomial(std::move(c));
}

bool is_prime_small(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Factors a primitive squarefree polynomial with positive leading coefficient.
std::vector<IntPolynomial> zassenhaus(const IntPolynomial& f) {
  const int n = f.degree();
  if (n <= 1) return {f};
  const Integer lc = f.leading();
  // Pick the prime with the fewest modular factors among a few good ones.
  u64 best_p = 0;
  std::vector<ModPoly> best;
  int tried = 0;
  for (u64 p = 3; tried < 6 && p < 100000; p += 2) {
    if (!is_prime_small(p)) continue;
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    ModPoly fp = reduce(f, p);
    if (deg(fp) != n) continue;
    if (deg(gcd(fp, derivative(fp, p), p)) != 0) continue;
    ++tried;
    std::vector<ModPoly> facs = factor_mod_p(fp, p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw std::logic_error("zassenhaus: no suitable prime");
  if (best.size() == 1) return {f};
  const u64 p = best_p;
  // Mignotte-style bound: any factor's coefficients are below 2^n * (n+1) * H * |lc|.
  Integer height = 0;
  for (const auto& c : f.coeffs()) height = std::max(height, Integer(abs(c)));
  Integer bound = (Integer(1) << static_cast<mp_bitcnt_t>(n)) * (n + 1) * height * abs(lc) * 2;
  unsigned k = 1;
  Integer pk = p;
  while (pk <= bound) {
    pk *= p;
    ++k;
  }
  ZPoly fz(f.coeffs().begin(), f.coeffs().end());
  std::vector<ZPoly> lifted = hensel_multi(zmod(fz, pk), best, p, k, pk);

  std::vector<IntPolynomial> found;
  IntPolynomial rest = f;
  std::vector<ZPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool progress = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      ZPoly prod{rest.leading()};
      for (auto i : idx) prod = zmod(zmul(prod, pool[i]), pk);
      IntPolynomial cand = primitive_part(symmetric(prod, pk));
      if (cand.degree() > 0 && divides(cand, rest)) {
        found.push_back(cand);
        rest = primitive_part(exact_quotient(rest, cand));
        std::vector<ZPoly> np;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
        pool = std::move(np);
        progress = true;
        break;
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!progress) ++s;
  }
  if (rest.degree() > 0) found.push_back(rest);
  return found;
}

bool poly_less(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t k = a.coeffs().size(); k-- > 0;)
    if (a.coeffs()[k] != b.coeffs()[k]) return a.coeffs()[k] < b.coeffs()[k];
  return false;
}

}  // namespace

IntPolynomial Factorization::expand() const {
  IntPolynomial r = IntPolynomial::constant(unit);
  for (const auto& t : terms)
    for (int i = 0; i < t.multiplicity; ++i) r = r * t.factor;
  return r;
}

std::vector<FactorTerm> squarefree_decomposition(const IntPolynomial& p) {
  std::vector<FactorTerm> out;
  if (p.degree() < 1) return out;
  // Yun's algorithm over Q.
  RatPolynomial f = make_monic(to_rational(p));
  RatPolynomial fd = f.derivative();
  RatPolynomial a = gcd(f, fd);
  RatPolynomial b = f / a;
  RatPolynomial c = fd / a;
  RatPolynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPolynomial g = gcd(b, d);
    if (g.degree() > 0) out.push_back({to_primitive(g), i});
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Factorization factor_rational(const IntPolynomial& p) {
  if (p.is_zero()) throw PreconditionError("factor_rational: zero polynomial");
  Factorization out;
  Integer c = content(p);
  if (p.leading() < 0) c = -c;
  out.unit = c;
  if (p.degree() == 0) return out;
  IntPolynomial prim = primitive_part(p);
  for (const auto& sq : squarefree_decomposition(prim)) {
    for (auto& f : zassenhaus(sq.factor)) out.terms.push_back({primitive_part(f), sq.multiplicity});
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const FactorTerm& a, const FactorTerm& b) {
    if (poly_less(a.factor, b.factor)) return true;
    if (poly_less(b.factor, a.factor)) return false;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

bool is_irreducible(const IntPolynomial& p) {
  if (p.degree() < 1) return false;
  Factorization f = factor_rational(p);
  return f.terms.size() == 1 && f.terms[0].multiplicity == 1;
}

unsigned long euler_phi(unsigned long k) {
  unsigned long r = k;
  for (unsigned long q = 2; q * q <= k; ++q) {
    if (k % q) continue;
    while (k % q == 0) k /= q;
    r -= r / q;
  }
  if (k > 1) r -= r / k;
  return r;
}

IntPolynomial cyclotomic(unsigned long k) {
  if (k == 0) throw PreconditionError("cyclotomic: index must be positive");
  IntPolynomial f = IntPolynomial::monomial(1, k) - IntPolynomial::constant(1);
  for (unsigned long d = 1; d < k; ++d)
    if (k % d == 0) f = exact_quotient(f, cyclotomic(d));
  return f;
}

std::vector<unsigned long> indices_with_phi_at_most(unsigned long bound) {
  // phi(k) >= sqrt(k/2), so k <= 2 bound^2 suffices.
  std::vector<unsigned long> out;
  const unsigned long top = 2 * bound * bound + 2;
  for (unsigned long k = 1; k <= top; ++k)
    if (euler_phi(k) <= bound) out.push_back(k);
  return out;
}

bool all_roots_are_roots_of_unity(const IntPolynomial& p) {
  if (p.degree() < 1) return p.degree() == 0;
  IntPolynomial rest = primitive_part(squarefree_part(p));
  for (unsigned long k : indices_with_phi_at_most(static_cast<unsigned long>(rest.degree()))) {
    IntPolynomial c = cyclotomic(k);
    if (divides(c, rest)) rest = exact_quotient(rest, c);
    if (rest.degree() == 0) return true;
  }
  return rest.degree() == 0;
}

bool has_root_of_unity(const IntPolynomial& p) {
  if (p.degree() < 1) return false;
  for (unsigned long k : indices_with_phi_at_most(static_cast<unsigned long>(p.degree())))
    if (divides(cyclotomic(k), p)) return true;
  return false;
}

}  // namespace nilrigid::exact
