#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nilrigid/exact/rational.hpp"

namespace nilrigid::detail {

/// Parsed JSON document that remembers where each value started, keyed by
/// JSON pointer. Syntax errors throw InputError with line and column.
class LocatedJson {
 public:
  explicit LocatedJson(std::string_view text);

  const nlohmann::json& root() const { return root_; }

  /// Throws InputError located at the value under `pointer` (or at the
  /// nearest located ancestor).
  [[noreturn]] void fail(const std::string& pointer, const std::string& what) const;

  /// Typed accessors that fail with location on type mismatch.
  const nlohmann::json& at(const std::string& pointer) const;
  bool has(const std::string& pointer) const;
  long long integer(const std::string& pointer) const;
  Rational rational(const std::string& pointer) const;
  std::string string(const std::string& pointer) const;
  std::size_t array_size(const std::string& pointer) const;

 private:
  std::string text_;
  nlohmann::json root_;
  std::map<std::string, std::size_t> offsets_;

  std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const;
};

std::string pointer_join(const std::string& base, std::size_t index);
std::string pointer_join(const std::string& base, const std::string& key);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nilrigid::detail
