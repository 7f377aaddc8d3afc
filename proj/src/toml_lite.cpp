#include "ristl/toml_lite.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ristl/common.hpp"

namespace ristl::toml {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

class ValueParser {
 public:
  ValueParser(const std::string& text, std::size_t line) : text_(text), line_(line) {}

  Value parse() {
    Value v = parse_value();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ConfigError("unexpected trailing characters after value", line_);
    }
    return v;
  }

 private:
  const std::string& text_;
  std::size_t line_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Value parse_value() {
    skip_ws();
    if (pos_ >= text_.size()) throw ConfigError("missing value", line_);
    char c = text_[pos_];
    Value v;
    v.line = line_;
    if (c == '"') {
      ++pos_;
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') s.push_back(text_[pos_++]);
      if (pos_ >= text_.size()) throw ConfigError("unterminated string", line_);
      ++pos_;
      v.data = s;
      return v;
    }
    if (c == '[') {
      ++pos_;
      std::vector<Value> items;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        v.data = items;
        return v;
      }
      while (true) {
        items.push_back(parse_value());
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < text_.size() && text_[pos_] == ']') {
          ++pos_;
          break;
        }
        throw ConfigError("expected ',' or ']' in array", line_);
      }
      v.data = items;
      return v;
    }
    if (text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      v.data = true;
      return v;
    }
    if (text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      v.data = false;
      return v;
    }
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double num = std::strtod(begin, &end);
    if (end == begin) throw ConfigError("cannot parse value", line_);
    pos_ += static_cast<std::size_t>(end - begin);
    v.data = num;
    return v;
  }
};

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  return std::all_of(k.begin(), k.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

}  // namespace

const std::string& Value::as_string() const {
  if (!is_string()) throw ConfigError("expected a string value", line);
  return std::get<std::string>(data);
}

double Value::as_number() const {
  if (!is_number()) throw ConfigError("expected a numeric value", line);
  return std::get<double>(data);
}

bool Value::as_bool() const {
  if (!is_bool()) throw ConfigError("expected a boolean value", line);
  return std::get<bool>(data);
}

const std::vector<Value>& Value::as_array() const {
  if (!is_array()) throw ConfigError("expected an array value", line);
  return std::get<std::vector<Value>>(data);
}

std::vector<double> Value::as_number_array() const {
  const auto& items = as_array();
  std::vector<double> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.as_number());
  return out;
}

const Value& Table::at(const std::string& key) const {
  auto it = entries.find(key);
  if (it == entries.end()) {
    throw ConfigError("missing required key '" + key + "'", line);
  }
  return it->second;
}

void Table::expect_keys(const std::vector<std::string>& allowed,
                        const std::string& context) const {
  for (const auto& [key, value] : entries) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + context, value.line);
    }
  }
}

Document parse(const std::string& text) {
  Document doc;
  Table* current = &doc.root;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      bool is_array = line.size() > 1 && line[1] == '[';
      std::string close = is_array ? "]]" : "]";
      if (line.substr(line.size() - close.size()) != close) {
        throw ConfigError("malformed table header", line_no);
      }
      std::string name = trim(line.substr(is_array ? 2 : 1,
                                          line.size() - 2 * (is_array ? 2 : 1)));
      if (!valid_key(name)) throw ConfigError("invalid table name '" + name + "'", line_no);
      if (is_array) {
        doc.table_arrays[name].push_back(Table{{}, line_no});
        current = &doc.table_arrays[name].back();
      } else {
        if (doc.tables.count(name) > 0) {
          throw ConfigError("duplicate table [" + name + "]", line_no);
        }
        doc.tables[name] = Table{{}, line_no};
        current = &doc.tables[name];
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value'", line_no);
    }
    std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ConfigError("invalid key '" + key + "'", line_no);
    if (current->entries.count(key) > 0) {
      throw ConfigError("duplicate key '" + key + "'", line_no);
    }
    std::string rest = trim(line.substr(eq + 1));
    current->entries[key] = ValueParser(rest, line_no).parse();
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace ristl::toml
