#pragma once

#include "pobs/core.hpp"

namespace pobs::models {

/// x1' = x1 + delta x2, x2' = x2, y = x1 on [0, T]; the estimated quantity is x(T).
///
/// The model runs in reversed time tau = T - t, so z(tau) = x(T - tau) solves
/// z' = -A z with z(0) = x(T) and the output record is the same set of values.
struct LinearPairConfig {
  double delta = 0.1;
  double T = 10.0;
  int nt = 4000;
  int substeps = 4;
  Weighting weighting = Weighting::dt_trapezoid;
};

void validate(const LinearPairConfig& cfg);

ModelSpec linear_pair_model(const LinearPairConfig& cfg);

/// Euclidean unit vectors e_1, e_2.
EstimationSpace linear_pair_estimation_space();

Vector linear_pair_nominal();

/// [[a11, a12 d], [a21 d, a22 d^2]] with
/// a11 = 1 - e^{-2T}, a12 = a21 = (T + 1/2) e^{-2T} - 1/2, a22 = 1/2 - (T^2 + T + 1/2) e^{-2T}.
Matrix linear_pair_quadratic_form(double delta, double T);

/// Square root of the smallest eigenvalue of linear_pair_quadratic_form.
double closed_form_sigma(double delta, double T);

}  // namespace pobs::models
