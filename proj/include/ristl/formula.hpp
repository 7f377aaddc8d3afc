#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ristl {

/// Time window [a, b] of a temporal operator, 0 <= a <= b < inf.
struct Interval {
  double a;
  double b;
  Interval(double a, double b);
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct TrueNode {};

/// Predicate leaf. A stochastic leaf (no threshold) refers to a chance/risk
/// predicate function by id; a determinized STL leaf carries its synthesized
/// threshold c (or c + chi) and is evaluated as h(x, mu_tilde) - threshold.
struct PredicateNode {
  std::string id;
  std::optional<double> threshold;
};

struct NotNode {
  FormulaPtr child;
};
struct AndNode {
  FormulaPtr left, right;
};
struct OrNode {
  FormulaPtr left, right;
};
struct UntilNode {
  FormulaPtr left, right;
  Interval window;
};
struct EventuallyNode {
  FormulaPtr child;
  Interval window;
};
struct AlwaysNode {
  FormulaPtr child;
  Interval window;
};

/// Immutable formula tree; safe for concurrent shared reads.
class Formula {
 public:
  using Node = std::variant<TrueNode, PredicateNode, NotNode, AndNode, OrNode,
                            UntilNode, EventuallyNode, AlwaysNode>;

  explicit Formula(Node node) : node_(std::move(node)) {}
  const Node& node() const { return node_; }

  static FormulaPtr truth();
  static FormulaPtr pred(std::string id);
  static FormulaPtr pred_stl(std::string id, double threshold);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr disj(FormulaPtr l, FormulaPtr r);
  static FormulaPtr until(FormulaPtr l, FormulaPtr r, Interval w);
  static FormulaPtr eventually(FormulaPtr f, Interval w);
  static FormulaPtr always(FormulaPtr f, Interval w);

 private:
  Node node_;
};

/// Nested sum of window upper bounds: the trace length needed past t to
/// evaluate the formula at t.
double horizon(const Formula& f);

/// Unique predicate ids in first-appearance order (count M).
std::vector<std::string> predicates_of(const Formula& f);

/// True when every predicate leaf carries a threshold.
bool fully_determinized(const Formula& f);

/// True when some predicate leaf carries a threshold.
bool any_determinized(const Formula& f);

std::string to_string(const Formula& f);

}  // namespace ristl
