#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace reebscape::toml {

struct Value;
using Array = std::vector<Value>;
using Table = std::map<std::string, Value>;

/// Values of the configuration subset: strings, numbers, booleans, arrays,
/// tables and arrays of tables. Dotted keys and inline tables are not supported.
struct Value {
  std::variant<std::string, double, bool, Array, Table> data;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }
  bool is_table() const { return std::holds_alternative<Table>(data); }

  const std::string& as_string(const std::string& key) const;
  double as_number(const std::string& key) const;
  bool as_bool(const std::string& key) const;
  const Array& as_array(const std::string& key) const;
  const Table& as_table(const std::string& key) const;
};

/// Parses a document; throws ConfigError with the line number on bad input.
Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace reebscape::toml
