#pragma once

#include "pobs/types.hpp"

#include <vector>

namespace pobs::models {

/// Legendre-Gauss-Lobatto rule of order Np on [-1, 1]: Np + 1 nodes including
/// both endpoints, quadrature weights, and the nodal differentiation matrix.
struct LglRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  Matrix D;
};

LglRule lgl_nodes(int Np);

/// P_n(x) by the three-term recurrence.
double legendre(int n, double x);

}  // namespace pobs::models
