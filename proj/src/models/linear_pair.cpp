#include "pobs/models/linear_pair.hpp"

#include <cmath>

namespace pobs::models {

void validate(const LinearPairConfig& c) {
  if (!(c.T > 0.0)) throw ConfigError("linpair: T must be positive");
  if (c.nt < 1 || c.substeps < 1) throw ConfigError("linpair: nt and substeps must be >= 1");
}

ModelSpec linear_pair_model(const LinearPairConfig& cfg) {
  validate(cfg);
  const double d = cfg.delta;
  ModelSpec m;
  m.id = "linpair";
  m.dim = 2;
  m.channels = 1;
  m.resolution = 2;
  m.horizon = cfg.T;
  m.sample_times = uniform_times(cfg.T, cfg.nt);
  m.substeps = cfg.substeps;
  m.weighting = cfg.weighting;
  m.rhs = [d](double, const Vector& z) -> Vector {
    Vector dz(2);
    dz[0] = -(z[0] + d * z[1]);
    dz[1] = -z[1];
    return dz;
  };
  m.observe = [](const Vector& z) -> Vector { return Vector::Constant(1, z[0]); };
  m.state_norm = [](const Vector& z) { return z.norm(); };
  return m;
}

EstimationSpace linear_pair_estimation_space() {
  EstimationSpace space;
  space.id = "linpair_full";
  space.basis = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
  space.labels = {"x1", "x2"};
  space.inner = [](const Vector& a, const Vector& b) { return a.dot(b); };
  return space;
}

Vector linear_pair_nominal() { return Vector::Ones(2); }

Matrix linear_pair_quadratic_form(double delta, double T) {
  const double e = std::exp(-2.0 * T);
  const double a11 = 1.0 - e;
  const double a12 = (T + 0.5) * e - 0.5;
  const double a22 = 0.5 - (T * T + T + 0.5) * e;
  Matrix M(2, 2);
  M << a11, a12 * delta, a12 * delta, a22 * delta * delta;
  return M;
}

double closed_form_sigma(double delta, double T) {
  const Matrix M = linear_pair_quadratic_form(delta, T);
  const double tr = M(0, 0) + M(1, 1);
  const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  // Smaller root of x^2 - tr x + det, in the cancellation-free form.
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
  const double big = 0.5 * tr + disc;
  const double small = big > 0.0 ? det / big : 0.0;
  return std::sqrt(std::max(0.0, small));
}

}  // namespace pobs::models
