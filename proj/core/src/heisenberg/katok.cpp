#include "nilrigid/heisenberg/katok.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "common/located_json.hpp"
#include "nilrigid/action/spectrum.hpp"
#include "nilrigid/exact/factor.hpp"
#include "nilrigid/exact/roots.hpp"

namespace nilrigid::heisenberg {

using namespace exact;

namespace {

constexpr std::size_t kDim = 6;

int real_root_count(const Factorization& f) {
  int n = 0;
  for (const auto& t : f.terms) n += t.multiplicity * SturmSequence(t.factor).count_all();
  return n;
}

int multiplicity_of(const Factorization& f, long root) {
  IntPolynomial lin{Integer(-root), Integer(1)};
  for (const auto& t : f.terms)
    if (t.factor == lin) return t.multiplicity;
  return 0;
}

std::string format_root(const AlgebraicEnclosure& e) {
  char buf[96];
  double im = e.approx_im();
  if (e.real || im == 0.0)
    std::snprintf(buf, sizeof buf, "%.17g", e.approx_re());
  else
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", e.approx_re(), im);
  return buf;
}

std::string interval_string(const Interval& i) { return "[" + i.lo().to_string(20) + ", " + i.hi().to_string(20) + "]"; }

// Two outer roots t, -t of the trace polynomial would give real eigenvalues
// of equal absolute value.
bool outer_roots_mirror(const IntPolynomial& g) {
  RatPolynomial gr = to_rational(g);
  RatPolynomial h = gcd(gr, to_rational(g.negated_argument()));
  if (h.degree() < 1) return false;
  SturmSequence s(to_primitive(h));
  return s.count_below_or_at(Rational(-2)) + s.count_above(Rational(2)) > 0;
}

}  // namespace

EigenPattern eigen_pattern(const RationalMatrix& m) {
  EigenPattern p;
  p.charpoly = charpoly(m);
  Factorization f = factor_rational(p.charpoly);
  p.real_roots = real_root_count(f);
  p.reciprocal = p.charpoly.degree() % 2 == 0 && p.charpoly.reversed() == p.charpoly;
  if (p.reciprocal) {
    IntPolynomial g = trace_polynomial(p.charpoly);
    SturmSequence s(g);
    p.trace_roots_inside = s.count(Rational(-2), Rational(2)) - (g(Integer(2)) == 0 ? 1 : 0);
    p.trace_polynomial = g;
  }
  p.unit_circle_nonreal = unit_circle_root_count(p.charpoly) - multiplicity_of(f, 1) - multiplicity_of(f, -1);
  for (const auto& t : f.terms)
    if (t.factor.degree() >= 2 && all_roots_are_roots_of_unity(t.factor)) p.nonreal_root_of_unity = true;

  IntPolynomial sq = squarefree_part(p.charpoly);
  int distinct_real = SturmSequence(sq).count_all();
  RatPolynomial mirror = gcd(to_rational(sq), to_rational(sq.negated_argument()));
  int mirrored = mirror.degree() >= 1 ? SturmSequence(to_primitive(mirror)).count_all() : 0;
  p.distinct_real_abs = distinct_real == p.real_roots && mirrored == 0;

  for (const auto& r : isolate_roots(sq, 128)) p.approx_roots.push_back(format_root(r));
  return p;
}

KatokVerification verify_katok_pair(const RationalMatrix& a, const RationalMatrix& b, long bits) {
  KatokVerification v;
  KatokCertificate& c = v.certificate;
  c.precision_bits = bits;
  auto fail = [&](int k, const std::string& what) {
    v.property[static_cast<std::size_t>(k)] = false;
    v.failures.push_back("(" + std::to_string(k) + ") " + what);
  };
  v.property.fill(true);

  bool shapes = a.rows() == kDim && a.cols() == kDim && b.rows() == kDim && b.cols() == kDim;
  if (!shapes) {
    for (int k = 0; k <= 5; ++k) fail(k, "matrices must be 6x6");
    return v;
  }
  c.det_a = a.determinant();
  c.det_b = b.determinant();
  c.commute = a * b == b * a;
  if (!a.is_integer() || !b.is_integer()) fail(0, "entries must be integers");
  if (c.det_a != 1 || c.det_b != 1) fail(0, "det A = " + to_string(c.det_a) + ", det B = " + to_string(c.det_b) + " (need 1)");
  if (!c.commute) fail(0, "A and B do not commute");

  c.a = eigen_pattern(a);
  c.b = eigen_pattern(b);
  c.irreducible_a = is_irreducible(c.a.charpoly);
  if (!c.irreducible_a) fail(1, "charpoly(A) = " + c.a.charpoly.to_string() + " is reducible over Q");

  for (const auto& [pat, name] : {std::pair{&c.a, "A"}, std::pair{&c.b, "B"}}) {
    const EigenPattern& e = *pat;
    int nonreal = 6 - e.real_roots;
    if (nonreal != 2 || e.unit_circle_nonreal != 2 || e.nonreal_root_of_unity) {
      std::ostringstream os;
      os << name << ": " << nonreal << " non-real eigenvalues, " << e.unit_circle_nonreal << " of them on the unit circle";
      if (e.nonreal_root_of_unity) os << ", roots of unity present";
      fail(2, os.str());
    }
    if (e.real_roots != 4) fail(3, std::string(name) + ": " + std::to_string(e.real_roots) + " real eigenvalues (need 4)");
  }
  if (!c.a.distinct_real_abs) fail(4, "real eigenvalues of A do not have distinct absolute values");

  if (!v.property[0]) {
    fail(5, "not evaluated: (0) fails");
    return v;
  }
  try {
    auto spectrum = action::lyapunov_spectrum(action::AutoAction::toral({a, b}), bits);
    for (const auto& e : spectrum.entries) c.log_rows.push_back({e.chi[0], e.chi[1]});
    for (std::size_t i = 0; i < c.log_rows.size() && !c.rank_witness; ++i)
      for (std::size_t j = i + 1; j < c.log_rows.size(); ++j) {
        Interval det = c.log_rows[i][0] * c.log_rows[j][1] - c.log_rows[i][1] * c.log_rows[j][0];
        if (!det.contains_zero()) {
          c.rank_witness = std::array<std::size_t, 2>{i, j};
          c.witness_minor = det;
          break;
        }
      }
    if (c.rank_witness) {
      c.log_rank = 2;
    } else {
      for (const auto& r : c.log_rows)
        if (!r[0].contains_zero() || !r[1].contains_zero()) c.log_rank = 1;
      fail(5, "log-embedding rank " + std::to_string(c.log_rank) + " < 2 at " + std::to_string(bits) + " bits");
    }
  } catch (const std::exception& e) {
    fail(5, std::string("log-embedding rank undetermined: ") + e.what());
  }
  return v;
}

namespace {

using Coeffs = std::array<long long, kDim>;

// Product in Z[x]/(f) for monic f of degree 6 (f given low to high, 7 entries).
Coeffs mulmod(const Coeffs& u, const Coeffs& w, const std::array<long long, 7>& f) {
  std::array<long long, 2 * kDim - 1> r{};
  for (std::size_t i = 0; i < kDim; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < kDim; ++j) r[i + j] += u[i] * w[j];
  }
  for (std::size_t k = 2 * kDim - 2; k >= kDim; --k) {
    long long q = r[k];
    if (q == 0) continue;
    for (std::size_t i = 0; i <= kDim; ++i) r[k - kDim + i] -= q * f[i];
  }
  Coeffs out;
  for (std::size_t i = 0; i < kDim; ++i) out[i] = r[i];
  return out;
}

// Odometer over [-h, h]^n restricted to vectors of sup-norm exactly h.
class HeightShell {
 public:
  HeightShell(std::size_t n, long h) : h_(h), v_(n, -h) {}
  const std::vector<long>& value() const { return v_; }
  bool next_valid() {
    while (true) {
      if (!first_ && !advance()) return false;
      first_ = false;
      for (long x : v_)
        if (x == h_ || x == -h_) return true;
    }
  }

 private:
  bool advance() {
    for (std::size_t i = v_.size(); i-- > 0;) {
      if (v_[i] < h_) {
        ++v_[i];
        return true;
      }
      v_[i] = -h_;
    }
    return false;
  }
  long h_;
  std::vector<long> v_;
  bool first_ = true;
};

bool sextic_pattern(long a, long b, long c) {
  IntPolynomial g{Integer(c - 2 * a), Integer(b - 3), Integer(a), Integer(1)};
  SturmSequence s(g);
  if (s.count_all() != 3) return false;
  if (g(Integer(2)) == 0 || g(Integer(-2)) == 0) return false;
  if (s.count(Rational(-2), Rational(2)) != 1) return false;
  return !outer_roots_mirror(g);
}

}  // namespace

KatokPair search_katok_pair(int poly_height_bound, int centralizer_bound) {
  if (poly_height_bound <= 0 || centralizer_bound <= 0)
    throw PreconditionError("search_katok_pair: bounds must be positive");
  if (poly_height_bound > 12 || centralizer_bound > 6)
    throw PreconditionError("search_katok_pair: bounds above (12, 6) risk 64-bit overflow");
  KatokSearchRecord rec;
  rec.poly_height_bound = poly_height_bound;
  rec.centralizer_bound = centralizer_bound;
  for (long h = 1; h <= poly_height_bound; ++h) {
    HeightShell sextics(3, h);
    while (sextics.next_valid()) {
      const long a = sextics.value()[0], b = sextics.value()[1], c = sextics.value()[2];
      if (!sextic_pattern(a, b, c)) continue;
      IntPolynomial f{Integer(1), Integer(a), Integer(b), Integer(c), Integer(b), Integer(a), Integer(1)};
      if (!is_irreducible(f)) continue;
      const std::array<long long, 7> fc{1, a, b, c, b, a, 1};
      // theta^{-1} = -(theta^5 + a theta^4 + b theta^3 + c theta^2 + b theta + a)
      const Coeffs inv{-a, -b, -c, -b, -a, -1};
      std::vector<Coeffs> inv_pow{Coeffs{1, 0, 0, 0, 0, 0}};
      for (std::size_t i = 1; i < kDim; ++i) inv_pow.push_back(mulmod(inv_pow.back(), inv, fc));
      RationalMatrix A = companion_matrix(f);

      for (long k = 1; k <= centralizer_bound; ++k) {
        HeightShell polys(kDim, k);
        while (polys.next_valid()) {
          const auto& p = polys.value();
          int nonzero = 0;
          for (long x : p) nonzero += x != 0;
          if (nonzero <= 1) continue;  // +-theta^j
          ++rec.candidates_tried;
          Coeffs u{}, w{};
          for (std::size_t i = 0; i < kDim; ++i) {
            u[i] = p[i];
            for (std::size_t j = 0; j < kDim; ++j) w[j] += p[i] * inv_pow[i][j];
          }
          // Relative norm 1 over Q(theta + 1/theta): a unit whose unit-circle
          // conjugates have absolute value 1.
          if (mulmod(u, w, fc) != Coeffs{1, 0, 0, 0, 0, 0}) continue;
          std::vector<Rational> pc;
          for (long x : p) pc.emplace_back(x);
          RationalMatrix B = evaluate(RatPolynomial(pc), A);
          auto ver = verify_katok_pair(A, B);
          if (!ver.ok()) continue;
          rec.sextic = {a, b, c};
          rec.b_polynomial = p;
          return KatokPair{A, B, ver.certificate, rec};
        }
      }
    }
  }
  throw ExhaustedError("search exhausted at poly_height_bound " + std::to_string(poly_height_bound) +
                       ", centralizer_bound " + std::to_string(centralizer_bound) + " (" +
                       std::to_string(rec.candidates_tried) + " centralizer candidates)");
}

KatokPair make_katok_pair(const RationalMatrix& a, const RationalMatrix& b) {
  auto ver = verify_katok_pair(a, b);
  if (!ver.ok()) {
    std::string msg = "not a Katok pair:";
    for (const auto& f : ver.failures) msg += " " + f + ";";
    throw PreconditionError(msg);
  }
  return KatokPair{a, b, ver.certificate, std::nullopt};
}

nil::NilAlgebra heisenberg13() { return nil::NilAlgebra::heisenberg(6, Rational(2)); }

action::AutoAction build_action(const KatokPair& pair) {
  auto lift = [](const RationalMatrix& m) {
    return RationalMatrix::diagonal_blocks({m, m.inverse().transpose(), RationalMatrix::identity(1)});
  };
  action::AutoAction act{heisenberg13(), {lift(pair.A), lift(pair.B)}};
  action::require_valid(act);
  return act;
}

namespace {

std::string matrix_rows(const RationalMatrix& m, const std::string& indent) {
  std::string out = "[\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += indent + "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + to_string(m(i, j));
    out += i + 1 < m.rows() ? "],\n" : "]\n";
  }
  return out + indent + "]";
}

nlohmann::ordered_json pattern_json(const EigenPattern& p) {
  nlohmann::ordered_json j;
  j["charpoly"] = p.charpoly.to_string();
  j["reciprocal"] = p.reciprocal;
  if (p.trace_polynomial) {
    j["trace_polynomial"] = p.trace_polynomial->to_string("t");
    j["trace_roots_in_open_interval_-2_2"] = p.trace_roots_inside;
  }
  j["real_eigenvalues"] = p.real_roots;
  j["nonreal_on_unit_circle"] = p.unit_circle_nonreal;
  j["nonreal_roots_of_unity"] = p.nonreal_root_of_unity;
  j["distinct_real_abs"] = p.distinct_real_abs;
  j["eigenvalues"] = p.approx_roots;
  return j;
}

}  // namespace

std::string katok_to_json(const KatokPair& pair) {
  const KatokCertificate& c = pair.certificate;
  nlohmann::ordered_json cert;
  cert["A"] = pattern_json(c.a);
  cert["B"] = pattern_json(c.b);
  cert["irreducible_A"] = c.irreducible_a;
  cert["commute"] = c.commute;
  cert["precision_bits"] = c.precision_bits;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : c.log_rows) rows.push_back({interval_string(r[0]), interval_string(r[1])});
  cert["log_rows"] = rows;
  cert["log_rank"] = c.log_rank;
  if (c.rank_witness) {
    cert["rank_witness"] = {(*c.rank_witness)[0], (*c.rank_witness)[1]};
    cert["witness_minor"] = interval_string(*c.witness_minor);
  }

  std::string out = "{\n  \"A\": " + matrix_rows(pair.A, "  ") + ",\n  \"B\": " + matrix_rows(pair.B, "  ") + ",\n";
  if (pair.search) {
    const auto& s = *pair.search;
    nlohmann::ordered_json sj;
    sj["poly_height_bound"] = s.poly_height_bound;
    sj["centralizer_bound"] = s.centralizer_bound;
    sj["sextic"] = s.sextic;
    sj["b_polynomial"] = s.b_polynomial;
    sj["candidates_tried"] = s.candidates_tried;
    out += "  \"search\": " + sj.dump() + ",\n";
  }
  std::string cs = cert.dump(2);
  std::string indented;
  for (char ch : cs) {
    indented += ch;
    if (ch == '\n') indented += "  ";
  }
  out += "  \"certificate\": " + indented + "\n}\n";
  return out;
}

KatokPair parse_katok(std::string_view text, bool require_verified) {
  using detail::pointer_join;
  detail::LocatedJson doc(text);
  if (!doc.root().is_object()) doc.fail("", "Katok fixture must be a JSON object");
  auto matrix = [&](const std::string& p) {
    if (doc.array_size(p) != kDim) doc.fail(p, "expected 6 rows");
    RationalMatrix m(kDim, kDim);
    for (std::size_t i = 0; i < kDim; ++i) {
      std::string rp = pointer_join(p, i);
      if (doc.array_size(rp) != kDim) doc.fail(rp, "expected 6 entries");
      for (std::size_t j = 0; j < kDim; ++j) m(i, j) = doc.rational(pointer_join(rp, j));
    }
    return m;
  };
  RationalMatrix a = matrix("/A"), b = matrix("/B");
  std::optional<KatokSearchRecord> rec;
  if (doc.has("/search")) {
    KatokSearchRecord r;
    r.poly_height_bound = static_cast<int>(doc.integer("/search/poly_height_bound"));
    r.centralizer_bound = static_cast<int>(doc.integer("/search/centralizer_bound"));
    if (doc.array_size("/search/sextic") != 3) doc.fail("/search/sextic", "expected [a, b, c]");
    for (std::size_t i = 0; i < 3; ++i) r.sextic[i] = static_cast<long>(doc.integer(pointer_join("/search/sextic", i)));
    std::size_t np = doc.array_size("/search/b_polynomial");
    for (std::size_t i = 0; i < np; ++i) r.b_polynomial.push_back(static_cast<long>(doc.integer(pointer_join("/search/b_polynomial", i))));
    if (doc.has("/search/candidates_tried")) r.candidates_tried = static_cast<long>(doc.integer("/search/candidates_tried"));
    rec = r;
  }
  auto ver = verify_katok_pair(a, b);
  if (require_verified && !ver.ok()) {
    std::string msg = "fixture is not a Katok pair:";
    for (const auto& f : ver.failures) msg += " " + f + ";";
    doc.fail("/B", msg);
  }
  return KatokPair{a, b, ver.certificate, rec};
}

KatokPair load_katok(const std::string& path, bool require_verified) {
  return parse_katok(detail::read_file(path), require_verified);
}

void save_katok(const KatokPair& pair, const std::string& path) { detail::write_file(path, katok_to_json(pair)); }

}  // namespace nilrigid::heisenberg
