#pragma once

#include "pobs/core.hpp"

#include <memory>

namespace pobs::models {

enum class SweBoundary { reflective, outflow };

/// One-dimensional shallow water on [-1, 1], continuous spectral elements on LGL
/// nodes, conservative variables (h, uh), RK4 in time.
struct SweConfig {
  int elements = 54;
  int poly_order = 4;
  double g = 9.81;
  double T = 1.0;
  int nt = 800;  ///< output intervals; dt = T / nt
  int substeps = 1;
  std::vector<double> sensors{0.2, 0.5, 0.8};
  bool source = true;         ///< include -g h d(h_b)/dx in the momentum equation
  bool literal_h0 = false;    ///< exp(-8(x - 1/2)) instead of exp(-8(x - 1/2)^2)
  bool h0_is_surface = false; ///< initial depth h0 - h_b instead of h0
  SweBoundary bc = SweBoundary::reflective;
  double filter_strength = 1.0;  ///< top Legendre mode scaled by exp(-strength) per step
  Sampler h0;  ///< empty: Gaussian bump
  Sampler hb;  ///< empty: 0.1 (1 - x)
  Weighting weighting = Weighting::dt_trapezoid;
};

void validate(const SweConfig& cfg);

/// Node layout shared by the model and its estimation space.
struct SweGrid {
  int elements = 0;
  int poly_order = 0;
  double element_width = 0.0;
  std::vector<double> x;     ///< global node coordinates, ascending
  std::vector<double> mass;  ///< assembled LGL quadrature weights
  int nodes() const { return static_cast<int>(x.size()); }
};

SweGrid swe_grid(int elements, int poly_order);

double swe_default_h0(double x);
double swe_literal_h0(double x);
double swe_default_bed(double x);

/// State [h, uh] at global nodes.
ModelSpec swe_model(const SweConfig& cfg);

Vector swe_nominal(const SweConfig& cfg);

/// {1/2, cos(k pi x), sin(k pi x), k = 1..kf} applied to h only.
EstimationSpace swe_estimation_space(const SweConfig& cfg, int kf);

/// int h dx by LGL quadrature.
double swe_mass(const SweConfig& cfg, const Vector& state);

}  // namespace pobs::models
