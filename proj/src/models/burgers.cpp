#include "pobs/models/burgers.hpp"

#include "pobs/spline.hpp"

#include <cmath>

namespace pobs::models {

void validate(const BurgersConfig& c) {
  if (!(c.kappa > 0.0)) throw ConfigError("burgers: kappa must be positive");
  if (!(c.L > 0.0) || !(c.T > 0.0)) throw ConfigError("burgers: L and T must be positive");
  if (c.N < 4) throw ConfigError("burgers: need N >= 4");
  if (c.nt < 1 || c.substeps < 1) throw ConfigError("burgers: nt and substeps must be >= 1");
  if (c.sensors.empty()) throw ConfigError("burgers: no sensors");
  for (double x : c.sensors)
    if (!(x > 0.0 && x < c.L)) throw ConfigError("burgers: sensor locations must lie in (0, L)");
}

double burgers_default_u0(double x) {
  return -2.0 + std::cos(x) + std::sin(x) + std::cos(2.0 * x) + std::sin(2.0 * x);
}

ModelSpec burgers_model(const BurgersConfig& cfg) {
  validate(cfg);
  const int n = cfg.N;
  const double dx = cfg.L / n;
  const double kappa = cfg.kappa;
  const bool advection = cfg.advection;
  std::vector<double> knots(n + 1);
  for (int i = 0; i <= n; ++i) knots[i] = i * dx;
  knots[n] = cfg.L;

  auto spline_of = [knots](const Vector& v) {
    std::vector<double> y(knots.size(), 0.0);
    for (Eigen::Index i = 0; i < v.size(); ++i) y[i + 1] = v[i];
    return NaturalCubicSpline(knots, std::move(y));
  };

  ModelSpec m;
  m.id = "burgers";
  m.dim = n - 1;
  m.channels = static_cast<int>(cfg.sensors.size());
  m.resolution = n;
  m.horizon = cfg.T;
  m.sample_times = uniform_times(cfg.T, cfg.nt);
  m.substeps = cfg.substeps;
  m.weighting = cfg.weighting;
  m.rhs = [n, dx, kappa, advection](double, const Vector& u) -> Vector {
    const int k = n - 1;
    Vector du(k);
    for (int i = 0; i < k; ++i) {
      const double left = i == 0 ? 0.0 : u[i - 1];
      const double right = i + 1 == k ? 0.0 : u[i + 1];
      double v = kappa * (right + left - 2.0 * u[i]) / (dx * dx);
      if (advection) v -= u[i] * (right - left) / (2.0 * dx);
      du[i] = v;
    }
    return du;
  };
  m.observe = [spline_of, sensors = cfg.sensors](const Vector& u) -> Vector {
    const NaturalCubicSpline sp = spline_of(u);
    Vector y(static_cast<Eigen::Index>(sensors.size()));
    for (size_t c = 0; c < sensors.size(); ++c) y[c] = sp(sensors[c]);
    return y;
  };
  m.state_norm = [dx](const Vector& u) { return std::sqrt(dx * u.squaredNorm()); };
  m.lift = [spline_of](const Vector& u) -> Sampler {
    return [sp = spline_of(u)](double x) { return sp(x); };
  };
  m.restrict = [knots, n](const Sampler& f) -> Vector {
    Vector u(n - 1);
    for (int i = 1; i < n; ++i) u[i - 1] = f(knots[i]);
    return u;
  };
  m.continuum = Continuum{0.0, cfg.L, 1.0, n};
  return m;
}

Vector burgers_nominal(const BurgersConfig& cfg) {
  const Sampler f = cfg.u0 ? cfg.u0 : Sampler(burgers_default_u0);
  const double dx = cfg.L / cfg.N;
  Vector u(cfg.N - 1);
  for (int i = 1; i < cfg.N; ++i) u[i - 1] = f(i * dx);
  return u;
}

EstimationSpace burgers_estimation_space(const BurgersConfig& cfg, int kf) {
  if (kf < 1) throw ConfigError("burgers: K_F must be >= 1");
  const int n = cfg.N;
  const double dx = cfg.L / n;
  const double w = 2.0 * std::numbers::pi / cfg.L;
  EstimationSpace space;
  space.id = "burgers_fourier_kf" + std::to_string(kf);
  auto sample = [&](auto&& f) {
    Vector v(n - 1);
    for (int i = 1; i < n; ++i) v[i - 1] = f(i * dx);
    return v;
  };
  for (int k = 1; k <= kf; ++k) {
    space.basis.push_back(sample([&](double x) { return std::cos(k * w * x) - 1.0; }));
    space.labels.push_back("alpha_" + std::to_string(k));
  }
  for (int k = 1; k <= kf; ++k) {
    space.basis.push_back(sample([&](double x) { return std::sin(k * w * x); }));
    space.labels.push_back("beta_" + std::to_string(k));
  }
  space.inner = [dx](const Vector& a, const Vector& b) { return dx * a.dot(b); };
  return space;
}

}  // namespace pobs::models
