#pragma once

#include <string>
#include <vector>

#include "ristl/formula.hpp"

namespace ristl {

/// Classification of a formula against the control fragment:
///   psi := true | predicate | psi & psi
///   phi := G[a,b] psi | F[a,b] psi | psi U[a,b] psi | phi & phi
struct FragmentReport {
  bool is_psi_class = false;
  bool is_phi_class = false;
  std::vector<std::pair<std::string, std::string>> violations;  // (node path, reason)
};

FragmentReport validate_fragment(const Formula& f);

}  // namespace ristl
