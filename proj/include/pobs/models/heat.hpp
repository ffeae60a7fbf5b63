#pragma once

#include "pobs/core.hpp"

#include <numbers>

namespace pobs::models {

/// u_t = u_xx on [0, L] with Dirichlet ends, observed at x0, in sine-mode coordinates.
struct HeatConfig {
  double L = 2.0 * std::numbers::pi;
  double T = 10.0;
  double x0 = 0.5;
  int N = 8;       ///< number of modes
  int nt = 20000;  ///< output intervals
  Weighting weighting = Weighting::dt_trapezoid;
};

void validate(const HeatConfig& cfg);

/// Decay rate (k pi / L)^2 of mode k (1-based).
double heat_decay_rate(int k, double L);

/// Modal state; propagated with the exact exponential, rhs kept for cross-checks.
ModelSpec heat_model(const HeatConfig& cfg);

/// The first s unit modal vectors.
EstimationSpace heat_estimation_space(const HeatConfig& cfg, int s);

/// u(x, 0) = sin(pi x / L), i.e. the first mode with unit amplitude.
Vector heat_nominal(const HeatConfig& cfg);

/// G_ij = c_i c_j (1 - exp(-(l_i + l_j) T)) / (l_i + l_j), c_k = sin(k pi x0 / L).
Matrix heat_gramian_closed_form(int s, const HeatConfig& cfg);

}  // namespace pobs::models
