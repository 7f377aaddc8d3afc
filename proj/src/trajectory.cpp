#include "ristl/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ristl/common.hpp"

namespace ristl {

void Trajectory::validate() const {
  if (times.empty()) throw Error("trajectory is empty");
  if (states.size() != times.size()) {
    throw Error("trajectory needs one state per time sample");
  }
  if (!theta.empty() && theta.size() != times.size()) {
    throw Error("trajectory theta column length mismatch");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error("trajectory times must be strictly increasing (sample " +
                  std::to_string(i) + ")");
    }
  }
}

std::size_t Trajectory::nearest_index(double t) const {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  auto i = static_cast<std::size_t>(it - times.begin());
  return (times[i] - t < t - times[i - 1]) ? i : i - 1;
}

Trajectory Trajectory::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trace file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error("trace file '" + path + "' is empty");

  // Header: t,x1,x2[,theta] (extra columns such as p1,p2,u1,u2,b,eps are
  // tolerated and ignored here).
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  if (cols.size() < 3 || cols[0] != "t") {
    throw Error("trace file '" + path + "' needs a header starting with t,x1,x2");
  }
  bool has_theta = cols.size() > 3 && cols[3] == "theta";

  Trajectory traj;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() < 3) {
      throw Error("trace row " + std::to_string(line_no) + " has fewer than 3 columns");
    }
    traj.times.push_back(row[0]);
    Eigen::VectorXd x(2);
    x << row[1], row[2];
    traj.states.push_back(std::move(x));
    if (has_theta) traj.theta.push_back(row[3]);
  }
  traj.validate();
  return traj;
}

void Trajectory::save_csv(const std::string& path) const {
  validate();
  std::ofstream out(path);
  if (!out) throw Error("cannot write trace file '" + path + "'");
  out << (theta.empty() ? "t,x1,x2\n" : "t,x1,x2,theta\n");
  out.precision(12);
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << times[i] << "," << states[i](0) << "," << states[i](1);
    if (!theta.empty()) out << "," << theta[i];
    out << "\n";
  }
}

}  // namespace ristl
