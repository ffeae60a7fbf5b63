#pragma once

// Random linear test systems shared by the property tests and the acceptance run.

#include "pobs/core.hpp"

#include <random>

namespace pobs::test_support {

struct LinearSystem {
  Matrix A, C;
};

inline LinearSystem random_system(std::mt19937_64& rng, int n, int channels) {
  std::normal_distribution<double> nd;
  LinearSystem s{Matrix(n, n), Matrix(channels, n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.A(i, j) = 0.5 * nd(rng);
  s.A -= 1.0 * Matrix::Identity(n, n);  // keep trajectories moderate
  for (int i = 0; i < channels; ++i)
    for (int j = 0; j < n; ++j) s.C(i, j) = nd(rng);
  return s;
}

inline ModelSpec linear_model(const LinearSystem& s) {
  ModelSpec m;
  m.id = "random_linear";
  m.dim = static_cast<int>(s.A.rows());
  m.channels = static_cast<int>(s.C.rows());
  m.horizon = 2.0;
  m.sample_times = uniform_times(2.0, 40);
  m.substeps = 2;
  m.weighting = Weighting::dt_trapezoid;
  m.rhs = [A = s.A](double, const Vector& u) -> Vector { return A * u; };
  m.observe = [C = s.C](const Vector& u) -> Vector { return C * u; };
  m.state_norm = [](const Vector& u) { return u.norm(); };
  return m;
}

inline EstimationSpace random_space(std::mt19937_64& rng, int n, int s) {
  std::normal_distribution<double> nd;
  EstimationSpace space;
  space.id = "random";
  for (int i = 0; i < s; ++i) {
    Vector e(n);
    for (int j = 0; j < n; ++j) e[j] = nd(rng);
    space.basis.push_back(e);
    space.labels.push_back("e" + std::to_string(i + 1));
  }
  space.inner = [](const Vector& a, const Vector& b) { return a.dot(b); };
  return space;
}

}  // namespace pobs::test_support
