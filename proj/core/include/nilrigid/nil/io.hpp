#pragma once

#include <string>
#include <string_view>

#include "nilrigid/nil/algebra.hpp"

namespace nilrigid::nil {

/// {"dim": d, "class": c, "brackets": [[i, j, [[k, "p/q"], ...]], ...]}
/// with 1-based indices. Rationals may be given as strings or integers.
/// Throws InputError (with line and column) on malformed text and
/// PreconditionError when the structure constants are invalid.
NilAlgebra parse_algebra(std::string_view text);
NilAlgebra load_algebra(const std::string& path);
std::string algebra_to_json(const NilAlgebra& alg);
void save_algebra(const NilAlgebra& alg, const std::string& path);

}  // namespace nilrigid::nil
