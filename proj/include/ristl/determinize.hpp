#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ristl/domain_box.hpp"
#include "ristl/formula.hpp"
#include "ristl/gaussian.hpp"
#include "ristl/monitor.hpp"
#include "ristl/predicate.hpp"
#include "ristl/risk_eval.hpp"

namespace ristl {

/// Reference to a determinized predicate inside a conjunction; negation is
/// admitted for affine families only (the complement halfplane).
struct PredRef {
  std::string id;
  bool negated = false;

  static PredRef parse(const std::string& token);  // "mu1" or "!mu1"
  std::string describe() const { return negated ? "!" + id : id; }
};

/// Outcome of one set-inclusion check (Lemma-1 vertex evaluation for affine
/// families, boundary discretization for norm balls).
struct InclusionCheck {
  bool holds = false;
  Eigen::VectorXd worst_point;
  double worst_value = 0.0;  // P(h >= 0) for chance specs, R(-h) otherwise
  double threshold = 0.0;    // delta or gamma
};

/// argmin of v.x over the design set {x in box | h(x, mu) - c >= 0}.
/// Ties at a vertex resolve to the lexicographically smallest optimizer.
/// Throws when the design set is empty.
Eigen::VectorXd worst_point_affine(const PredicateFunction& pred, double c,
                                   const DomainBox& box, const GaussianVector& env);

/// Does the chance/risk set contain the design set at threshold c?
InclusionCheck check_inclusion(const PredicateFunction& pred, const RiskSpec& spec,
                               double c, const DomainBox& box, const GaussianVector& env,
                               const EvalMethod& method = ClosedForm{});

/// Smallest c (within tol) achieving the inclusion. Affine families use the
/// closed-form level-set alignment; norm balls bisect check_inclusion.
double minimal_c(const PredicateFunction& pred, const RiskSpec& spec,
                 const DomainBox& box, const GaussianVector& env, double tol = 1e-4);

/// Concave maximization of h(x, mu) - c - chi over the box (closed form for
/// single predicates).
double predicate_slack(const PredicateFunction& pred, double c, double chi,
                       const DomainBox& box, const Eigen::VectorXd& mu,
                       Eigen::VectorXd* argmax = nullptr);

/// Same for a conjunction member, honoring negation.
double member_value(const PredicateFunction& pred, const PredRef& ref, double c,
                    double chi, const Eigen::VectorXd& x, const Eigen::VectorXd& mu);

struct Assumption1Result {
  bool ok = true;
  struct Entry {
    std::vector<std::string> members;  // predicate refs in the group
    Eigen::VectorXd witness;
    double value = 0.0;  // max-min of the member functions over the box
  };
  std::vector<Entry> entries;
};

/// Checks that every predicate and every conjunction group admits a strictly
/// feasible point in the box (witnesses reported).
Assumption1Result check_assumption1(const std::vector<std::vector<PredRef>>& groups,
                                    const PredicateTable& preds,
                                    const std::map<std::string, double>& c,
                                    const std::map<std::string, double>& chi,
                                    const DomainBox& box, const Eigen::VectorXd& mu);

/// psi-class conjunction groups of a formula (maximal conjunctions of
/// predicate leaves; singletons are dropped).
std::vector<std::vector<PredRef>> conjunction_groups(const Formula& f);

/// Structure-preserving rewrite: stochastic leaves become determinized STL
/// leaves at threshold c (first) and c + chi (second). Throws if the formula
/// already contains determinized leaves.
std::pair<FormulaPtr, FormulaPtr> determinize_formula(
    const Formula& f, const std::map<std::string, double>& c,
    const std::map<std::string, double>& chi);

/// Robustness lower bound r = min_m r_m over the shrunk design sets
/// {h - c >= eps_r / alpha}, each r_m found by bisection on the relaxed
/// chance/risk threshold.
double robustness_bound_r(const std::vector<PredicateFunction>& preds,
                          const std::map<std::string, double>& c, double eps_r,
                          double alpha, const DomainBox& box, const GaussianVector& env,
                          double tol = 1e-4,
                          std::map<std::string, double>* per_predicate = nullptr);

struct DeterminizationOptions {
  double c_tol = 1e-4;
  double chi_fraction = 0.05;  // of the assumption-1 slack
  EvalMethod method = ClosedForm{};
};

struct DeterminizationResult {
  struct PerPredicate {
    std::string id;
    double c = 0.0;
    double chi = 0.0;
    InclusionCheck cert;
    double slack = 0.0;  // max over box of h - c
  };
  std::vector<PerPredicate> predicates;
  bool assumption1_ok = false;
  bool assumption2_ok = false;
  Assumption1Result assumption1;
  FormulaPtr phi;      // thresholds c
  FormulaPtr phi_bar;  // thresholds c + chi

  std::map<std::string, double> c_map() const;
  std::map<std::string, double> chi_map() const;
  const PerPredicate& at(const std::string& id) const;
};

/// Full pipeline: minimal thresholds, margins, assumption checks, rewrite.
DeterminizationResult run_determinization(const Formula& f, const PredicateTable& preds,
                                          const GaussianVector& env, const DomainBox& box,
                                          const DeterminizationOptions& opt = {});

}  // namespace ristl
