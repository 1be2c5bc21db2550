#include "reebscape/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "reebscape/error.hpp"

namespace reebscape::toml {

namespace {

[[noreturn]] void fail(const std::string& what, int line) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void type_fail(const std::string& key, const char* want) {
  throw ConfigError("config key '" + key + "' must be " + want);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Table run() {
    Table root;
    Table* current = &root;
    while (skip_blank_lines()) {
      if (peek() == '[') {
        current = header(root);
      } else {
        std::string key = bare_key();
        skip_ws();
        if (get() != '=') fail("expected '='", line_);
        skip_ws();
        Value v = value();
        if (current->count(key)) fail("duplicate key '" + key + "'", line_);
        (*current)[key] = std::move(v);
      }
      end_of_line();
    }
    return root;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;

  bool done() const { return i_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  char get() {
    if (done()) fail("unexpected end of input", line_);
    return s_[i_++];
  }

  void skip_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++i_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!done() && peek() != '\n') ++i_;
    }
  }

  // Skips whitespace, comments and newlines; false at end of input.
  bool skip_blank_lines() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (done()) return false;
      if (peek() == '\r') {
        ++i_;
        continue;
      }
      if (peek() != '\n') return true;
      ++i_;
      ++line_;
    }
  }

  void skip_space_in_array() {
    for (;;) {
      skip_ws();
      skip_comment();
      if (peek() == '\n') {
        ++i_;
        ++line_;
      } else if (peek() == '\r') {
        ++i_;
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_ws();
    skip_comment();
    if (peek() == '\r') ++i_;
    if (!done() && peek() != '\n') fail("trailing characters", line_);
  }

  std::string bare_key() {
    if (peek() == '"') return string_value();
    std::string k;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                       peek() == '-')) {
      k += get();
    }
    if (k.empty()) fail("expected a key", line_);
    return k;
  }

  Table* header(Table& root) {
    get();
    const bool array = peek() == '[';
    if (array) get();
    skip_ws();
    std::string name = bare_key();
    skip_ws();
    if (get() != ']' || (array && get() != ']')) fail("bad table header", line_);
    if (array) {
      Value& slot = root[name];
      if (!slot.is_array()) {
        if (!std::get<std::string>(slot.data).empty()) fail("'" + name + "' is not an array", line_);
        slot.data = Array{};
      }
      auto& arr = std::get<Array>(slot.data);
      arr.push_back(Value{Table{}});
      return &std::get<Table>(arr.back().data);
    }
    if (root.count(name)) fail("duplicate table '" + name + "'", line_);
    root[name] = Value{Table{}};
    return &std::get<Table>(root[name].data);
  }

  std::string string_value() {
    get();
    std::string out;
    for (;;) {
      const char c = get();
      if (c == '"') break;
      if (c == '\n') fail("unterminated string", line_);
      if (c == '\\') {
        const char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail("unsupported escape", line_);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  Value value() {
    const char c = peek();
    if (c == '"') return Value{string_value()};
    if (c == '\'') {
      // Literal string: no escapes, handy for embedded JSON.
      get();
      std::string out;
      for (char ch; (ch = get()) != '\'';) {
        if (ch == '\n') fail("unterminated string", line_);
        out += ch;
      }
      return Value{out};
    }
    if (c == '[') {
      get();
      Array arr;
      skip_space_in_array();
      while (peek() != ']') {
        arr.push_back(value());
        skip_space_in_array();
        if (peek() == ',') {
          get();
          skip_space_in_array();
        } else if (peek() != ']') {
          fail("expected ',' or ']'", line_);
        }
      }
      get();
      return Value{std::move(arr)};
    }
    std::string tok;
    while (!done() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' &&
           peek() != ']' && peek() != '#') {
      tok += get();
    }
    if (tok == "true") return Value{true};
    if (tok == "false") return Value{false};
    std::string digits;
    for (char ch : tok) {
      if (ch != '_') digits += ch;
    }
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    double v = 0.0;
    const auto* end = digits.data() + digits.size();
    const auto res = std::from_chars(digits.data(), end, v);
    if (digits.empty() || res.ec != std::errc() || res.ptr != end) {
      fail("bad value '" + tok + "'", line_);
    }
    return Value{v};
  }
};

}  // namespace

const std::string& Value::as_string(const std::string& key) const {
  if (!is_string()) type_fail(key, "a string");
  return std::get<std::string>(data);
}
double Value::as_number(const std::string& key) const {
  if (!is_number()) type_fail(key, "a number");
  return std::get<double>(data);
}
bool Value::as_bool(const std::string& key) const {
  if (!is_bool()) type_fail(key, "a boolean");
  return std::get<bool>(data);
}
const Array& Value::as_array(const std::string& key) const {
  if (!is_array()) type_fail(key, "an array");
  return std::get<Array>(data);
}
const Table& Value::as_table(const std::string& key) const {
  if (!is_table()) type_fail(key, "a table");
  return std::get<Table>(data);
}

Table parse(const std::string& text) { return Parser(text).run(); }

Table parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace reebscape::toml
