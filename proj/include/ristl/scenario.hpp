#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ristl/barrier.hpp"
#include "ristl/control.hpp"
#include "ristl/domain_box.hpp"
#include "ristl/formula.hpp"
#include "ristl/gaussian.hpp"
#include "ristl/monitor.hpp"
#include "ristl/predicate.hpp"

namespace ristl {

/// Additive disturbance on the position dynamics, bounded by C.
struct DisturbanceSpec {
  enum class Kind { Zero, Constant, SaturatedSpring, SeededNoise };
  Kind kind = Kind::Zero;
  Eigen::Vector2d constant = Eigen::Vector2d::Zero();
  double gain = 0.0;            // saturated-spring coefficient
  std::uint64_t seed = 0;       // seeded-noise stream
};

struct Dynamics {
  Eigen::Vector2d f_x = Eigen::Vector2d::Zero();
  double f_theta = 0.0;
  DisturbanceSpec disturbance;
  double C = 0.0;

  /// c_x(z, t), scaled down if it would exceed the bound C.
  Eigen::Vector2d disturbance_at(const Eigen::Vector2d& x, double t) const;
};

struct ControllerConfig {
  enum class Law { MinNorm, Slack };
  Law law = Law::Slack;
  double eta = 20.0;
  std::optional<double> l;      // default: 0.999 * min_m chi_m / L_m
  std::optional<double> alpha;  // default: choose_alpha per subtask
  double safety_chi = 0.05;
};

struct IntegratorConfig {
  double dt = 0.01;
  double t_end = 0.0;
};

struct Scenario {
  GaussianVector env;
  std::vector<PredicateFunction> predicates;
  FormulaPtr formula;
  std::string formula_text;
  std::vector<SubtaskSpec> subtasks;  // deadlines in global time, increasing
  std::optional<Dynamics> dynamics;
  ControllerConfig controller;
  IntegratorConfig integrator;
  std::optional<UnicycleState> initial;
  std::optional<DomainBox> domain;
  std::uint64_t seed = 0;

  PredicateTable table() const;
  const PredicateFunction& predicate(const std::string& id) const;

  /// Configured box, or the predicate geometry bounding box inflated by 20%.
  DomainBox domain_box() const;

  /// Formula predicates in first-appearance order.
  std::vector<PredicateFunction> formula_predicates() const;

  void require_simulation_sections() const;
};

Scenario load_scenario(const std::string& path);

}  // namespace ristl
