#include "pobs/models/wave.hpp"

#include <cmath>
#include <numbers>

namespace pobs::models {

void validate(const WaveConfig& c) {
  if (!(c.L > 0.0) || !(c.T > 0.0)) throw ConfigError("wave: L and T must be positive");
  if (c.N < 2) throw ConfigError("wave: need at least two interior points");
  if (c.nt < 1 || c.substeps < 1) throw ConfigError("wave: nt and substeps must be >= 1");
}

double wave_energy(const Vector& q, const Vector& v, double h) {
  const Eigen::Index n = q.size();
  double sum = 0.0;
  for (Eigen::Index j = 0; j <= n; ++j) {
    const double left = j == 0 ? 0.0 : q[j - 1];
    const double right = j == n ? 0.0 : q[j];
    const double grad = (right - left) / h;
    const double vel = j == 0 ? 0.0 : v[j - 1];
    sum += vel * vel + grad * grad;
  }
  return 0.5 * h * sum;
}

namespace {

Vector laplacian(const Vector& q, double h) {
  const Eigen::Index n = q.size();
  Vector a(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double left = j == 0 ? 0.0 : q[j - 1];
    const double right = j + 1 == n ? 0.0 : q[j + 1];
    a[j] = (left + right - 2.0 * q[j]) / (h * h);
  }
  return a;
}

}  // namespace

WaveModel wave_model(const WaveConfig& cfg) {
  validate(cfg);
  const int n = cfg.N;
  const double h = cfg.L / (n + 1);
  WaveModel w;
  w.h = h;

  auto& so = w.second_order;
  so.id = "wave";
  so.dim = n;
  so.channels = 1;
  so.sample_times = uniform_times(cfg.T, cfg.nt);
  so.accel = [h](const Vector& q) { return laplacian(q, h); };
  so.observe = [h](const Vector& q) -> Vector { return Vector::Constant(1, q[q.size() - 1] / h); };
  so.energy = [h](const Vector& q, const Vector& v) { return wave_energy(q, v, h); };
  so.boundary_integrand = [h](const Vector& q) {
    const double b = q[q.size() - 1] / h;
    return b * b;
  };

  auto& m = w.first_order;
  m.id = "wave";
  m.dim = 2 * n;
  m.channels = 1;
  m.resolution = n;
  m.horizon = cfg.T;
  m.sample_times = so.sample_times;
  m.substeps = cfg.substeps;
  m.weighting = Weighting::dt_trapezoid;
  m.rhs = [h, n](double, const Vector& u) -> Vector {
    Vector du(2 * n);
    du.head(n) = u.tail(n);
    du.tail(n) = laplacian(u.head(n), h);
    return du;
  };
  m.observe = [h, n](const Vector& u) -> Vector { return Vector::Constant(1, u[n - 1] / h); };
  m.state_norm = [h](const Vector& u) { return std::sqrt(h * u.squaredNorm()); };
  const double L = cfg.L;
  m.restrict = [h, n](const Sampler& f) -> Vector {
    Vector u = Vector::Zero(2 * n);
    for (int j = 1; j <= n; ++j) u[j - 1] = f(j * h);
    return u;
  };
  m.lift = [h, n, L](const Vector& u) -> Sampler {
    return [h, n, L, q = Vector(u.head(n))](double x) {
      if (x <= 0.0 || x >= L) return 0.0;
      const double s = x / h;
      const int j = static_cast<int>(std::floor(s));
      const double frac = s - j;
      const double left = j == 0 ? 0.0 : q[j - 1];
      const double right = j >= n ? 0.0 : q[j];
      return (1.0 - frac) * left + frac * right;
    };
  };
  return w;
}

Vector wave_low_mode(const WaveConfig& cfg) {
  const double h = cfg.L / (cfg.N + 1);
  Vector q(cfg.N);
  for (int j = 1; j <= cfg.N; ++j) q[j - 1] = std::sin(std::numbers::pi * j * h / cfg.L);
  return q;
}

Vector wave_high_mode(const WaveConfig& cfg) {
  Vector q(cfg.N);
  for (int j = 1; j <= cfg.N; ++j)
    q[j - 1] = (j % 2 ? -1.0 : 1.0) * std::sin(j * std::numbers::pi / (cfg.N + 1));
  return q;
}

double boundary_energy(const EnergySeries& e) {
  if (e.times.size() < 2) return 0.0;
  const double dt = e.times[1] - e.times[0];
  double sum = 0.0;
  for (double v : e.boundary_energy_integrand) sum += dt * v;
  return sum;
}

EstimationSpace wave_estimation_space(const WaveConfig& cfg, int s) {
  if (s < 1 || s > cfg.N) throw ConfigError("wave: need 1 <= s <= N");
  const double h = cfg.L / (cfg.N + 1);
  EstimationSpace space;
  space.id = "wave_modes_" + std::to_string(s);
  for (int k = 1; k <= s; ++k) {
    Vector e = Vector::Zero(2 * cfg.N);
    for (int j = 1; j <= cfg.N; ++j) e[j - 1] = std::sin(k * std::numbers::pi * j * h / cfg.L);
    space.basis.push_back(e);
    space.labels.push_back("mode_" + std::to_string(k));
  }
  space.inner = [h](const Vector& a, const Vector& b) { return h * a.dot(b); };
  return space;
}

}  // namespace pobs::models
