#include "ristl/fragment.hpp"

namespace ristl {

namespace {

using Violations = std::vector<std::pair<std::string, std::string>>;

bool check_psi(const Formula& f, const std::string& path, Violations& out) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, TrueNode> || std::is_same_v<T, PredicateNode>) {
          return true;
        } else if constexpr (std::is_same_v<T, AndNode>) {
          bool l = check_psi(*n.left, path + ".left", out);
          bool r = check_psi(*n.right, path + ".right", out);
          return l && r;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          out.emplace_back(path, "negation excluded from the fragment");
          return false;
        } else if constexpr (std::is_same_v<T, OrNode>) {
          out.emplace_back(path, "disjunction excluded from the fragment");
          return false;
        } else {
          out.emplace_back(path, "temporal operator not allowed inside a conjunction layer");
          return false;
        }
      },
      f.node());
}

bool check_phi(const Formula& f, const std::string& path, Violations& out) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AndNode>) {
          bool l = check_phi(*n.left, path + ".left", out);
          bool r = check_phi(*n.right, path + ".right", out);
          return l && r;
        } else if constexpr (std::is_same_v<T, AlwaysNode> ||
                             std::is_same_v<T, EventuallyNode>) {
          return check_psi(*n.child, path + ".child", out);
        } else if constexpr (std::is_same_v<T, UntilNode>) {
          bool l = check_psi(*n.left, path + ".left", out);
          bool r = check_psi(*n.right, path + ".right", out);
          return l && r;
        } else if constexpr (std::is_same_v<T, TrueNode> ||
                             std::is_same_v<T, PredicateNode>) {
          out.emplace_back(path, "state formula without a temporal operator");
          return false;
        } else if constexpr (std::is_same_v<T, NotNode>) {
          out.emplace_back(path, "negation excluded from the fragment");
          return false;
        } else {
          out.emplace_back(path, "disjunction excluded from the fragment");
          return false;
        }
      },
      f.node());
}

}  // namespace

FragmentReport validate_fragment(const Formula& f) {
  FragmentReport report;
  Violations psi_violations;
  report.is_psi_class = check_psi(f, "root", psi_violations);
  report.is_phi_class = check_phi(f, "root", report.violations);
  return report;
}

}  // namespace ristl
