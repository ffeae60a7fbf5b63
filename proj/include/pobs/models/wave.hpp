#pragma once

#include "pobs/integrate.hpp"

namespace pobs::models {

/// Finite-difference wave equation u_tt = u_xx on [0, L] with N interior points,
/// observed through the boundary difference u_N / h.
struct WaveConfig {
  double L = 1.0;
  double T = 4.0;
  int N = 20;
  int nt = 400;
  int substeps = 25;
};

void validate(const WaveConfig& cfg);

struct WaveModel {
  double h = 0.0;
  SecondOrderModel second_order;
  ModelSpec first_order;  ///< state [q, v], for the Gramian machinery
};

WaveModel wave_model(const WaveConfig& cfg);

/// E_h = h/2 sum_{j=0}^{N} (|v_j|^2 + |(q_{j+1} - q_j)/h|^2), q_0 = q_{N+1} = 0.
double wave_energy(const Vector& q, const Vector& v, double h);

/// q_j(0) = sin(pi x_j / L).
Vector wave_low_mode(const WaveConfig& cfg);
/// Highest discrete eigenmode q_j(0) = (-1)^j sin(j pi / (N + 1)).
Vector wave_high_mode(const WaveConfig& cfg);

/// sum_k dt |u_N(t_k)/h|^2 over the recorded samples.
double boundary_energy(const EnergySeries& e);

/// First s displacement sine modes sampled on the grid.
EstimationSpace wave_estimation_space(const WaveConfig& cfg, int s);

}  // namespace pobs::models
