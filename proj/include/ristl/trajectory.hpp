#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace ristl {

/// Time-stamped state trace. Times are strictly increasing; one state per
/// time. theta is optional (empty or one entry per sample).
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> theta;

  std::size_t size() const { return times.size(); }
  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }

  void validate() const;

  /// Index of the sample nearest to t (ties resolve to the earlier sample).
  std::size_t nearest_index(double t) const;

  /// CSV with header t,x1,x2[,theta].
  static Trajectory load_csv(const std::string& path);
  void save_csv(const std::string& path) const;
};

}  // namespace ristl
