#include "ristl/optim.hpp"

#include <algorithm>

namespace ristl {

Eigen::VectorXd maximize_over_box(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const DomainBox& box, double* best_value) {
  const Eigen::Index n = box.dim();
  Eigen::VectorXd best = box.center();
  double fbest = f(best);

  auto consider = [&](const Eigen::VectorXd& x) {
    double v = f(x);
    if (v > fbest) {
      fbest = v;
      best = x;
    }
  };

  if (n == 1) {
    const int g = 2048;
    Eigen::VectorXd x(1);
    for (int i = 0; i <= g; ++i) {
      x(0) = box.lower(0) + (box.upper(0) - box.lower(0)) * i / g;
      consider(x);
    }
  } else if (n == 2) {
    const int g = 96;
    Eigen::VectorXd x(2);
    for (int i = 0; i <= g; ++i) {
      for (int j = 0; j <= g; ++j) {
        x(0) = box.lower(0) + (box.upper(0) - box.lower(0)) * i / g;
        x(1) = box.lower(1) + (box.upper(1) - box.lower(1)) * j / g;
        consider(x);
      }
    }
  }

  double step = (box.upper - box.lower).maxCoeff() / (n <= 2 ? 64.0 : 4.0);
  while (step > 1e-10) {
    bool improved = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Eigen::VectorXd x = best;
        x(i) = std::clamp(x(i) + sgn * step, box.lower(i), box.upper(i));
        double v = f(x);
        if (v > fbest + 1e-15) {
          fbest = v;
          best = x;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  if (best_value != nullptr) *best_value = fbest;
  return best;
}

}  // namespace ristl
