#include "ristl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "ristl/common.hpp"

namespace ristl {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  FormulaPtr run() {
    auto f = parse_or();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + what);
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() ||
        !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail("expected an identifier");
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  Interval window() {
    expect('[', "to open a time window");
    double a = number();
    double b = a;  // F[b] is shorthand for F[b,b]
    if (eat(',')) b = number();
    std::size_t close_pos = pos_;
    expect(']', "to close the time window");
    try {
      return Interval(a, b);
    } catch (const Error& e) {
      throw ParseError(e.what(), close_pos);
    }
  }

  // Operator keyword followed by '['; otherwise the token is an identifier.
  bool at_temporal(char op) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != op) return false;
    std::size_t next = pos_ + 1;
    while (next < text_.size() && std::isspace(static_cast<unsigned char>(text_[next]))) {
      ++next;
    }
    return next < text_.size() && text_[next] == '[';
  }

  FormulaPtr parse_or() {
    auto left = parse_and();
    while (peek('|')) {
      eat('|');
      left = Formula::disj(left, parse_and());
    }
    return left;
  }

  FormulaPtr parse_and() {
    auto left = parse_until();
    while (peek('&')) {
      eat('&');
      left = Formula::conj(left, parse_until());
    }
    return left;
  }

  FormulaPtr parse_until() {
    auto left = parse_unary();
    if (at_temporal('U')) {
      ++pos_;
      Interval w = window();
      auto right = parse_unary();
      return Formula::until(left, right, w);
    }
    return left;
  }

  FormulaPtr parse_unary() {
    skip_ws();
    if (eat('!')) return Formula::negate(parse_unary());
    if (at_temporal('F')) {
      ++pos_;
      Interval w = window();
      return Formula::eventually(parse_unary(), w);
    }
    if (at_temporal('G')) {
      ++pos_;
      Interval w = window();
      return Formula::always(parse_unary(), w);
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    skip_ws();
    if (eat('(')) {
      auto f = parse_or();
      expect(')', "to close the group");
      return f;
    }
    std::string name = ident();
    if (name == "true") return Formula::truth();
    return Formula::pred(std::move(name));
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).run(); }

void validate_predicate_ids(const Formula& f, const std::vector<std::string>& known) {
  for (const auto& id : predicates_of(f)) {
    if (std::find(known.begin(), known.end(), id) == known.end()) {
      throw Error("formula references unknown predicate '" + id + "'");
    }
  }
}

}  // namespace ristl
