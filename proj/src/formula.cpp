#include "ristl/formula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ristl/common.hpp"

namespace ristl {

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
  if (!(a >= 0.0) || !(b >= a) || !std::isfinite(b)) {
    throw Error("interval requires 0 <= a <= b < inf, got [" + std::to_string(a_) +
                ", " + std::to_string(b_) + "]");
  }
}

FormulaPtr Formula::truth() { return std::make_shared<Formula>(Node{TrueNode{}}); }

FormulaPtr Formula::pred(std::string id) {
  return std::make_shared<Formula>(Node{PredicateNode{std::move(id), std::nullopt}});
}

FormulaPtr Formula::pred_stl(std::string id, double threshold) {
  return std::make_shared<Formula>(Node{PredicateNode{std::move(id), threshold}});
}

FormulaPtr Formula::negate(FormulaPtr f) {
  return std::make_shared<Formula>(Node{NotNode{std::move(f)}});
}

FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Node{AndNode{std::move(l), std::move(r)}});
}

FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Node{OrNode{std::move(l), std::move(r)}});
}

FormulaPtr Formula::until(FormulaPtr l, FormulaPtr r, Interval w) {
  return std::make_shared<Formula>(Node{UntilNode{std::move(l), std::move(r), w}});
}

FormulaPtr Formula::eventually(FormulaPtr f, Interval w) {
  return std::make_shared<Formula>(Node{EventuallyNode{std::move(f), w}});
}

FormulaPtr Formula::always(FormulaPtr f, Interval w) {
  return std::make_shared<Formula>(Node{AlwaysNode{std::move(f), w}});
}

double horizon(const Formula& f) {
  return std::visit(
      [](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueNode> || std::is_same_v<T, PredicateNode>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return horizon(*n.child);
        } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
          return std::max(horizon(*n.left), horizon(*n.right));
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          return n.window.b + std::max(horizon(*n.left), horizon(*n.right));
        } else {
          return n.window.b + horizon(*n.child);
        }
      },
      f.node());
}

namespace {

void collect_preds(const Formula& f, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PredicateNode>) {
          if (std::find(out.begin(), out.end(), n.id) == out.end()) out.push_back(n.id);
        } else if constexpr (std::is_same_v<T, NotNode>) {
          collect_preds(*n.child, out);
        } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
          collect_preds(*n.left, out);
          collect_preds(*n.right, out);
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          collect_preds(*n.left, out);
          collect_preds(*n.right, out);
        } else if constexpr (std::is_same_v<T, EventuallyNode> ||
                             std::is_same_v<T, AlwaysNode>) {
          collect_preds(*n.child, out);
        }
      },
      f.node());
}

enum class DetScan { All, Any };

bool scan_determinized(const Formula& f, DetScan mode) {
  bool all = true, any = false;
  auto walk = [&](const Formula& g, auto&& self) -> void {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PredicateNode>) {
            if (n.threshold) {
              any = true;
            } else {
              all = false;
            }
          } else if constexpr (std::is_same_v<T, NotNode>) {
            self(*n.child, self);
          } else if constexpr (std::is_same_v<T, AndNode> || std::is_same_v<T, OrNode>) {
            self(*n.left, self);
            self(*n.right, self);
          } else if constexpr (std::is_same_v<T, UntilNode>) {
            self(*n.left, self);
            self(*n.right, self);
          } else if constexpr (std::is_same_v<T, EventuallyNode> ||
                               std::is_same_v<T, AlwaysNode>) {
            self(*n.child, self);
          }
        },
        g.node());
  };
  walk(f, walk);
  return mode == DetScan::All ? all : any;
}

std::string window_str(const Interval& w) {
  std::ostringstream os;
  os << "[" << w.a << "," << w.b << "]";
  return os.str();
}

}  // namespace

std::vector<std::string> predicates_of(const Formula& f) {
  std::vector<std::string> out;
  collect_preds(f, out);
  return out;
}

bool fully_determinized(const Formula& f) { return scan_determinized(f, DetScan::All); }

bool any_determinized(const Formula& f) { return scan_determinized(f, DetScan::Any); }

std::string to_string(const Formula& f) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueNode>) {
          return "true";
        } else if constexpr (std::is_same_v<T, PredicateNode>) {
          if (!n.threshold) return n.id;
          std::ostringstream os;
          os << "det(" << n.id << "," << *n.threshold << ")";
          return os.str();
        } else if constexpr (std::is_same_v<T, NotNode>) {
          return "!(" + to_string(*n.child) + ")";
        } else if constexpr (std::is_same_v<T, AndNode>) {
          return "(" + to_string(*n.left) + " & " + to_string(*n.right) + ")";
        } else if constexpr (std::is_same_v<T, OrNode>) {
          return "(" + to_string(*n.left) + " | " + to_string(*n.right) + ")";
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          return "(" + to_string(*n.left) + " U" + window_str(n.window) + " " +
                 to_string(*n.right) + ")";
        } else if constexpr (std::is_same_v<T, EventuallyNode>) {
          return "F" + window_str(n.window) + "(" + to_string(*n.child) + ")";
        } else {
          return "G" + window_str(n.window) + "(" + to_string(*n.child) + ")";
        }
      },
      f.node());
}

}  // namespace ristl
