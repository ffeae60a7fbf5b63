#pragma once

#include "pobs/core.hpp"

#include <numbers>

namespace pobs::models {

/// Viscous Burgers u_t + u u_x = kappa u_xx on [0, L] with u(0) = u(L) = 0,
/// central differences on N intervals, sensors read through a cubic-spline lift.
struct BurgersConfig {
  double L = 2.0 * std::numbers::pi;
  double T = 5.0;
  double kappa = 0.14;
  int N = 84;
  int nt = 20;
  int substeps = 40;
  std::vector<double> sensors{0.25 * L, 0.5 * L, 0.75 * L};
  Sampler u0;       ///< empty: -2 + cos x + sin x + cos 2x + sin 2x
  bool advection = true;  ///< false drops the u u_x term (pure FD heat equation)
  Weighting weighting = Weighting::dt_right;
};

void validate(const BurgersConfig& cfg);

double burgers_default_u0(double x);

ModelSpec burgers_model(const BurgersConfig& cfg);

/// Nominal initial state: the configured u0 sampled on the interior grid.
Vector burgers_nominal(const BurgersConfig& cfg);

/// {cos(2k pi x/L) - 1, k = 1..kf} then {sin(2k pi x/L), k = 1..kf}; every member
/// satisfies alpha_0/2 + sum alpha_k = 0.
EstimationSpace burgers_estimation_space(const BurgersConfig& cfg, int kf);

}  // namespace pobs::models
