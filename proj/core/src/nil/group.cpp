#include "nilrigid/nil/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace nilrigid::nil {

namespace {

// One BCH term: coefficient times the right-nested bracket of a word in X, Y
// (letters 0 = X, 1 = Y), [w1, [w2, [..., w_m]]].
struct BchTerm {
  Rational coeff;
  std::vector<int> word;
};

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Dynkin's formula:
// sum_n (-1)^{n-1}/n sum_{r_i+s_i>0} [X^{r1} Y^{s1} ... X^{rn} Y^{sn}] / (m prod r_i! s_i!)
// with m = sum (r_i + s_i) and [...] the right-nested bracket.
void enumerate(int cls, int n, int left, std::vector<int>& word, Rational denom, std::map<std::vector<int>, Rational>& acc,
               int pairs_done) {
  if (pairs_done == n) {
    int m = static_cast<int>(word.size());
    if (m == 0) return;
    // Words ending in XX or YY bracket to zero; a single-letter word is itself.
    if (m >= 2 && word[m - 1] == word[m - 2]) return;
    Rational c = Rational((n % 2) ? 1 : -1, n) / (denom * m);
    c.canonicalize();
    acc[word] += c;
    return;
  }
  for (int r = 0; r <= left; ++r)
    for (int s = 0; r + s <= left; ++s) {
      if (r + s == 0) continue;
      for (int t = 0; t < r; ++t) word.push_back(0);
      for (int t = 0; t < s; ++t) word.push_back(1);
      enumerate(cls, n, left - r - s, word, denom * factorial(r) * factorial(s), acc, pairs_done + 1);
      word.resize(word.size() - r - s);
    }
}

const std::vector<BchTerm>& bch_terms(int cls) {
  static std::mutex mu;
  static std::map<int, std::vector<BchTerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(cls);
  if (it != cache.end()) return it->second;
  std::map<std::vector<int>, Rational> acc;
  std::vector<int> word;
  for (int n = 1; n <= cls; ++n) enumerate(cls, n, cls, word, 1, acc, 0);
  std::vector<BchTerm> terms;
  for (auto& [w, c] : acc)
    if (c != 0) terms.push_back({c, w});
  return cache.emplace(cls, std::move(terms)).first->second;
}

template <class V, class Br, class Scale, class Add>
V eval_terms(int cls, const V& u, const V& v, Br br, Scale scale, Add add, V zero) {
  V out = zero;
  for (const auto& t : bch_terms(cls)) {
    const std::size_t m = t.word.size();
    V cur = t.word[m - 1] ? v : u;
    for (std::size_t k = m - 1; k-- > 0;) cur = br(t.word[k] ? v : u, cur);
    add(out, scale(t.coeff, cur));
  }
  return out;
}

}  // namespace

GroupPoint bch(const NilAlgebra& alg, const GroupPoint& u, const GroupPoint& v) {
  if (u.size() != alg.dim() || v.size() != alg.dim()) throw PreconditionError("bch: dimension mismatch");
  if (alg.nilpotency_class() > kMaxBchClass) throw PreconditionError("bch: nilpotency class above 6 is unsupported");
  if (alg.is_abelian()) {
    GroupPoint r = u;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += v[i];
    return r;
  }
  return eval_terms<GroupPoint>(
      alg.nilpotency_class(), u, v, [&](const Vec& a, const Vec& b) { return alg.bracket(a, b); },
      [](const Rational& c, Vec x) {
        for (auto& q : x) q *= c;
        return x;
      },
      [](Vec& a, const Vec& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      },
      Vec(alg.dim()));
}

std::vector<double> bch(const NilAlgebra& alg, const std::vector<double>& u, const std::vector<double>& v) {
  const std::size_t d = alg.dim();
  if (alg.nilpotency_class() > kMaxBchClass) throw PreconditionError("bch: nilpotency class above 6 is unsupported");
  using DV = std::vector<double>;
  // Dense double structure constants, built per call; d is small.
  std::vector<double> sc(d * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vec& s = alg.structure(i, j);
      for (std::size_t k = 0; k < d; ++k) sc[(i * d + j) * d + k] = s[k].get_d();
    }
  auto br = [&](const DV& a, const DV& b) {
    DV r(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        double f = a[i] * b[j];
        if (f == 0) continue;
        const double* s = &sc[(i * d + j) * d];
        for (std::size_t k = 0; k < d; ++k) r[k] += f * s[k];
      }
    }
    return r;
  };
  return eval_terms<DV>(
      alg.nilpotency_class(), u, v, br,
      [](const Rational& c, DV x) {
        double cd = c.get_d();
        for (auto& q : x) q *= cd;
        return x;
      },
      [](DV& a, const DV& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      },
      DV(d, 0.0));
}

GroupPoint group_commutator(const NilAlgebra& alg, const GroupPoint& g, const GroupPoint& h) {
  return bch(alg, bch(alg, g, h), bch(alg, inverse(g), inverse(h)));
}

GroupPoint power(const NilAlgebra&, const GroupPoint& p, long n) {
  // exp(v)^n = exp(n v).
  GroupPoint r = p;
  for (auto& q : r) q *= n;
  return r;
}

Reduction reduce_fundamental(const NilAlgebra& alg, const GroupPoint& p) {
  if (!alg.has_malcev_order())
    throw PreconditionError("reduce_fundamental: basis is not in Mal'cev order");
  const std::size_t d = alg.dim();
  GroupPoint r = p;
  for (std::size_t i = 0; i < d; ++i) {
    Integer n = exact::centered_round(r[i]);
    if (n == 0) continue;
    GroupPoint step(d);
    step[i] = -Rational(n);
    r = bch(alg, r, step);
  }
  return {r, bch(alg, inverse(r), p)};
}

std::vector<double> reduce_fundamental(const NilAlgebra& alg, const std::vector<double>& p) {
  if (!alg.has_malcev_order())
    throw PreconditionError("reduce_fundamental: basis is not in Mal'cev order");
  const std::size_t d = alg.dim();
  std::vector<double> r = p;
  for (std::size_t i = 0; i < d; ++i) {
    double n = std::floor(r[i] + 0.5);
    if (n == 0) continue;
    std::vector<double> step(d, 0.0);
    step[i] = -n;
    r = bch(alg, r, step);
    // Rounding can leave r[i] at exactly 1/2; keep the half-open box.
    if (r[i] >= 0.5) {
      std::fill(step.begin(), step.end(), 0.0);
      step[i] = -1.0;
      r = bch(alg, r, step);
    }
  }
  return r;
}

bool in_lattice(const NilAlgebra& alg, const GroupPoint& p) {
  Reduction red = reduce_fundamental(alg, p);
  for (const auto& q : red.representative)
    if (q != 0) return false;
  return true;
}

}  // namespace nilrigid::nil
