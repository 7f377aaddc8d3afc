#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace ristl::toml {

/// Minimal TOML subset used by scenario files: [table] and [[table-array]]
/// headers, key = value lines with strings, numbers, booleans, and (nested)
/// arrays. Comments start with '#'. Dotted keys and inline tables are not
/// supported.
struct Value {
  std::variant<std::string, double, bool, std::vector<Value>> data;
  std::size_t line = 0;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<std::vector<Value>>(data); }

  const std::string& as_string() const;
  double as_number() const;
  bool as_bool() const;
  const std::vector<Value>& as_array() const;
  std::vector<double> as_number_array() const;
};

struct Table {
  std::map<std::string, Value> entries;
  std::size_t line = 0;

  bool has(const std::string& key) const { return entries.count(key) > 0; }
  const Value& at(const std::string& key) const;

  /// Throws ConfigError when a key outside `allowed` is present.
  void expect_keys(const std::vector<std::string>& allowed,
                   const std::string& context) const;
};

struct Document {
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> table_arrays;
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace ristl::toml
