#include "common/located_json.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace nilrigid::detail {

namespace {

using nlohmann::json;

// Input iterator that publishes how far the lexer has read.
struct CountingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p;
  const char* base;
  std::size_t* pos;

  reference operator*() const { return *p; }
  CountingIterator& operator++() {
    ++p;
    *pos = static_cast<std::size_t>(p - base);
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator t = *this;
    ++*this;
    return t;
  }
  bool operator==(const CountingIterator& o) const { return p == o.p; }
  bool operator!=(const CountingIterator& o) const { return p != o.p; }
};

struct Frame {
  json* container;
  bool is_array;
  std::size_t index = 0;
  std::string key;
  std::string pointer;
};

class Handler : public nlohmann::json_sax<json> {
 public:
  Handler(json& root, std::map<std::string, std::size_t>& offsets, const std::size_t& pos, const std::string& text)
      : root_(root), offsets_(offsets), pos_(pos), text_(text) {}

  bool null() override { return put(json(nullptr), false); }
  bool boolean(bool v) override { return put(json(v), false); }
  bool number_integer(number_integer_t v) override { return put(json(v), false); }
  bool number_unsigned(number_unsigned_t v) override { return put(json(v), false); }
  bool number_float(number_float_t v, const string_t&) override { return put(json(v), false); }
  bool string(string_t& v) override { return put(json(v), true); }
  bool binary(binary_t&) override { return false; }

  bool start_object(std::size_t) override { return open(json::object(), false); }
  bool key(string_t& k) override {
    stack_.back().key = k;
    return true;
  }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array(), true); }
  bool end_array() override { return close(); }

  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) override {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min(position > 0 ? position - 1 : 0, text_.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = ex.what();
    // Drop nlohmann's own prefix; we report our own location.
    auto k = msg.find("syntax error");
    if (k != std::string::npos) msg = msg.substr(k);
    throw InputError("malformed JSON: " + msg, line, col);
  }

 private:
  json& root_;
  std::map<std::string, std::size_t>& offsets_;
  const std::size_t& pos_;
  const std::string& text_;
  std::vector<Frame> stack_;
  bool have_root_ = false;

  std::string next_pointer() const {
    if (stack_.empty()) return "";
    const Frame& f = stack_.back();
    return f.is_array ? pointer_join(f.pointer, f.index) : pointer_join(f.pointer, f.key);
  }

  // Start of the scalar token just read. The lexer may have consumed one
  // lookahead character past the token.
  std::size_t scalar_start(bool is_string) const {
    std::size_t e = std::min(pos_, text_.size());
    auto delim = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ',' || c == ']' || c == '}'; };
    if (e > 0 && !is_string && delim(text_[e - 1])) --e;
    if (is_string) {
      while (e > 0 && text_[e - 1] != '"') --e;
      std::size_t s = e > 0 ? e - 1 : 0;
      while (s > 0) {
        --s;
        if (text_[s] == '"') {
          std::size_t bs = 0;
          while (s >= bs + 1 && text_[s - bs - 1] == '\\') ++bs;
          if (bs % 2 == 0) return s;
        }
      }
      return 0;
    }
    std::size_t s = e;
    while (s > 0 && !delim(text_[s - 1]) && text_[s - 1] != ':' && text_[s - 1] != '[' && text_[s - 1] != '{') --s;
    return s;
  }

  json* insert(json v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      have_root_ = true;
      return &root_;
    }
    Frame& f = stack_.back();
    if (f.is_array) {
      f.container->push_back(std::move(v));
      ++f.index;
      return &f.container->back();
    }
    return &((*f.container)[f.key] = std::move(v));
  }

  bool put(json v, bool is_string) {
    offsets_[next_pointer()] = scalar_start(is_string);
    insert(std::move(v));
    return true;
  }

  bool open(json v, bool is_array) {
    std::string ptr = next_pointer();
    offsets_[ptr] = pos_ > 0 ? pos_ - 1 : 0;
    json* c = insert(std::move(v));
    stack_.push_back({c, is_array, 0, {}, ptr});
    return true;
  }

  bool close() {
    stack_.pop_back();
    return true;
  }
};

}  // namespace

std::string pointer_join(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

std::string pointer_join(const std::string& base, const std::string& key) {
  std::string esc;
  for (char c : key) {
    if (c == '~')
      esc += "~0";
    else if (c == '/')
      esc += "~1";
    else
      esc += c;
  }
  return base + "/" + esc;
}

LocatedJson::LocatedJson(std::string_view text) : text_(text) {
  std::size_t pos = 0;
  Handler h(root_, offsets_, pos, text_);
  CountingIterator first{text_.data(), text_.data(), &pos};
  CountingIterator last{text_.data() + text_.size(), text_.data(), &pos};
  json::sax_parse(first, last, &h);
}

std::pair<std::size_t, std::size_t> LocatedJson::line_col(std::size_t offset) const {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
    if (text_[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void LocatedJson::fail(const std::string& pointer, const std::string& what) const {
  std::string p = pointer;
  for (;;) {
    auto it = offsets_.find(p);
    if (it != offsets_.end()) {
      std::size_t off = it->second;
      auto [line, col] = line_col(off);
      throw InputError(what + (pointer.empty() ? "" : " (at " + pointer + ")"), line, col);
    }
    if (p.empty()) break;
    p = p.substr(0, p.rfind('/'));
  }
  throw InputError(what);
}

bool LocatedJson::has(const std::string& pointer) const { return root_.contains(nlohmann::json::json_pointer(pointer)); }

const nlohmann::json& LocatedJson::at(const std::string& pointer) const {
  if (!has(pointer)) fail(pointer.substr(0, pointer.rfind('/')), "missing field " + pointer);
  return root_.at(nlohmann::json::json_pointer(pointer));
}

long long LocatedJson::integer(const std::string& pointer) const {
  const auto& v = at(pointer);
  if (!v.is_number_integer()) fail(pointer, "expected an integer");
  return v.get<long long>();
}

Rational LocatedJson::rational(const std::string& pointer) const {
  const auto& v = at(pointer);
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    try {
      return exact::parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(pointer, std::string("invalid rational: ") + e.what());
    }
  }
  fail(pointer, "expected a rational (integer or \"p/q\" string)");
}

std::string LocatedJson::string(const std::string& pointer) const {
  const auto& v = at(pointer);
  if (!v.is_string()) fail(pointer, "expected a string");
  return v.get<std::string>();
}

std::size_t LocatedJson::array_size(const std::string& pointer) const {
  const auto& v = at(pointer);
  if (!v.is_array()) fail(pointer, "expected an array");
  return v.size();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace nilrigid::detail
