#include "pobs/models/heat.hpp"

#include <cmath>

namespace pobs::models {

void validate(const HeatConfig& c) {
  if (!(c.L > 0.0)) throw ConfigError("heat: L must be positive");
  if (!(c.T > 0.0)) throw ConfigError("heat: T must be positive");
  if (!(c.x0 > 0.0 && c.x0 < c.L)) throw ConfigError("heat: sensor x0 must lie in (0, L)");
  if (c.N < 1) throw ConfigError("heat: need at least one mode");
  if (c.nt < 1) throw ConfigError("heat: nt must be >= 1");
}

double heat_decay_rate(int k, double L) {
  const double w = k * std::numbers::pi / L;
  return w * w;
}

ModelSpec heat_model(const HeatConfig& cfg) {
  validate(cfg);
  const int n = cfg.N;
  Vector rates(n), sensor(n);
  for (int k = 1; k <= n; ++k) {
    rates[k - 1] = heat_decay_rate(k, cfg.L);
    sensor[k - 1] = std::sin(k * std::numbers::pi * cfg.x0 / cfg.L);
  }
  const double L = cfg.L;

  ModelSpec m;
  m.id = "heat";
  m.dim = n;
  m.channels = 1;
  m.resolution = n;
  m.horizon = cfg.T;
  m.sample_times = uniform_times(cfg.T, cfg.nt);
  m.weighting = cfg.weighting;
  m.rhs = [rates](double, const Vector& u) -> Vector { return -rates.cwiseProduct(u); };
  m.propagator = [rates](double t0, double t1, const Vector& u) -> Vector {
    return (-(t1 - t0) * rates).array().exp().matrix().cwiseProduct(u);
  };
  m.observe = [sensor](const Vector& u) -> Vector { return Vector::Constant(1, sensor.dot(u)); };
  m.state_norm = [](const Vector& u) { return u.norm(); };
  m.lift = [L](const Vector& u) -> Sampler {
    return [L, u](double x) {
      double v = 0.0;
      for (Eigen::Index k = 0; k < u.size(); ++k)
        v += u[k] * std::sin((k + 1) * std::numbers::pi * x / L);
      return v;
    };
  };
  // Sine coefficients (2/L) int u sin(k pi x / L) dx via a discrete sine transform,
  // exact for sine series below the transform length.
  m.restrict = [L, n](const Sampler& f) -> Vector {
    const int M = std::max(256, 16 * n);
    std::vector<double> samples(M);
    for (int j = 1; j < M; ++j) samples[j] = f(j * L / M);
    Vector u(n);
    for (int k = 1; k <= n; ++k) {
      double s = 0.0;
      for (int j = 1; j < M; ++j) s += samples[j] * std::sin(k * std::numbers::pi * j / M);
      u[k - 1] = 2.0 * s / M;
    }
    return u;
  };
  m.continuum = Continuum{0.0, L, 2.0 / L, n};
  return m;
}

EstimationSpace heat_estimation_space(const HeatConfig& cfg, int s) {
  if (s < 1 || s > cfg.N) throw ConfigError("heat: need 1 <= s <= N");
  EstimationSpace space;
  space.id = "heat_modes_" + std::to_string(s);
  for (int k = 0; k < s; ++k) {
    space.basis.push_back(Vector::Unit(cfg.N, k));
    space.labels.push_back("mode_" + std::to_string(k + 1));
  }
  space.inner = [](const Vector& a, const Vector& b) { return a.dot(b); };
  return space;
}

Vector heat_nominal(const HeatConfig& cfg) { return Vector::Unit(cfg.N, 0); }

Matrix heat_gramian_closed_form(int s, const HeatConfig& cfg) {
  Matrix G(s, s);
  for (int i = 1; i <= s; ++i) {
    for (int j = 1; j <= s; ++j) {
      const double lam = heat_decay_rate(i, cfg.L) + heat_decay_rate(j, cfg.L);
      G(i - 1, j - 1) = std::sin(i * std::numbers::pi * cfg.x0 / cfg.L) *
                        std::sin(j * std::numbers::pi * cfg.x0 / cfg.L) *
                        (1.0 - std::exp(-lam * cfg.T)) / lam;
    }
  }
  return G;
}

}  // namespace pobs::models
