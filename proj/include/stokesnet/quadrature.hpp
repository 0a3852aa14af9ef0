#pragma once

#include <cstddef>
#include <vector>

namespace stokesnet {

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, weights positive.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
  int n() const { return static_cast<int>(x.size()); }
};

/// n-point rule, computed by Newton iteration on P_n and cached per n.
const GaussRule& gauss_legendre(int n);

}  // namespace stokesnet
