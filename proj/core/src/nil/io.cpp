#include "nilrigid/nil/io.hpp"

#include <nlohmann/json.hpp>

#include "common/located_json.hpp"

namespace nilrigid::nil {

using detail::LocatedJson;
using detail::pointer_join;

NilAlgebra parse_algebra(std::string_view text) {
  LocatedJson doc(text);
  if (!doc.root().is_object()) doc.fail("", "algebra file must be a JSON object");
  long long d = doc.integer("/dim");
  if (d <= 0) doc.fail("/dim", "dim must be positive");
  std::optional<int> cls;
  if (doc.has("/class")) {
    long long c = doc.integer("/class");
    if (c <= 0) doc.fail("/class", "class must be positive");
    cls = static_cast<int>(c);
  }
  std::vector<BracketEntry> entries;
  if (doc.has("/brackets")) {
    std::size_t n = doc.array_size("/brackets");
    for (std::size_t e = 0; e < n; ++e) {
      std::string p = pointer_join("/brackets", e);
      if (doc.array_size(p) != 3) doc.fail(p, "bracket entry must be [i, j, [[k, c], ...]]");
      auto index = [&](const std::string& q) {
        long long v = doc.integer(q);
        if (v < 1 || v > d) doc.fail(q, "index out of range 1.." + std::to_string(d));
        return static_cast<std::size_t>(v - 1);
      };
      BracketEntry b{index(pointer_join(p, 0)), index(pointer_join(p, 1)), {}};
      std::string tp = pointer_join(p, 2);
      std::size_t nt = doc.array_size(tp);
      for (std::size_t t = 0; t < nt; ++t) {
        std::string term = pointer_join(tp, t);
        if (doc.array_size(term) != 2) doc.fail(term, "term must be [k, \"p/q\"]");
        b.terms.emplace_back(index(pointer_join(term, 0)), doc.rational(pointer_join(term, 1)));
      }
      entries.push_back(std::move(b));
    }
  }
  try {
    return NilAlgebra(static_cast<std::size_t>(d), entries, cls);
  } catch (const PreconditionError& e) {
    doc.fail(doc.has("/brackets") ? "/brackets" : "", e.what());
  }
}

NilAlgebra load_algebra(const std::string& path) { return parse_algebra(detail::read_file(path)); }

std::string algebra_to_json(const NilAlgebra& alg) {
  std::string out = "{\n  \"dim\": " + std::to_string(alg.dim()) +
                    ",\n  \"class\": " + std::to_string(alg.nilpotency_class()) + ",\n  \"brackets\": [";
  bool first = true;
  for (const auto& e : alg.entries()) {
    auto terms = nlohmann::json::array();
    for (const auto& [k, c] : e.terms) terms.push_back({k + 1, exact::to_string(c)});
    nlohmann::json row = {e.i + 1, e.j + 1, terms};
    out += (first ? "\n    " : ",\n    ") + row.dump();
    first = false;
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void save_algebra(const NilAlgebra& alg, const std::string& path) { detail::write_file(path, algebra_to_json(alg)); }

}  // namespace nilrigid::nil
