#include "pobs/models/swe.hpp"

#include "pobs/models/lgl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pobs::models {

void validate(const SweConfig& c) {
  if (c.elements < 2) throw ConfigError("swe: need at least two elements");
  if (c.poly_order < 2) throw ConfigError("swe: polynomial order must be >= 2");
  if (!(c.g > 0.0) || !(c.T > 0.0)) throw ConfigError("swe: g and T must be positive");
  if (c.nt < 1 || c.substeps < 1) throw ConfigError("swe: nt and substeps must be >= 1");
  if (c.sensors.empty()) throw ConfigError("swe: no sensors");
  for (double x : c.sensors)
    if (!(x >= -1.0 && x <= 1.0)) throw ConfigError("swe: sensors must lie in [-1, 1]");
}

double swe_default_h0(double x) { return 0.1 * std::exp(-8.0 * (x - 0.5) * (x - 0.5)) + 0.2; }
double swe_literal_h0(double x) { return 0.1 * std::exp(-8.0 * (x - 0.5)) + 0.2; }
double swe_default_bed(double x) { return 0.1 * (1.0 - x); }

SweGrid swe_grid(int elements, int poly_order) {
  const LglRule rule = lgl_nodes(poly_order);
  SweGrid g;
  g.elements = elements;
  g.poly_order = poly_order;
  g.element_width = 2.0 / elements;
  const int n = elements * poly_order + 1;
  g.x.resize(n);
  g.mass.assign(n, 0.0);
  for (int e = 0; e < elements; ++e) {
    for (int j = 0; j <= poly_order; ++j) {
      const int k = e * poly_order + j;
      g.x[k] = -1.0 + g.element_width * e + 0.5 * g.element_width * (rule.nodes[j] + 1.0);
      g.mass[k] += 0.5 * g.element_width * rule.weights[j];
    }
  }
  g.x.front() = -1.0;
  g.x.back() = 1.0;
  return g;
}

namespace {

struct Operators {
  SweGrid grid;
  Matrix D;       // element differentiation matrix scaled to physical width
  Matrix filter;  // nodal form of the modal filter
  std::vector<double> inv_mult;
  std::vector<double> bed_slope;
  double g = 9.81;
  bool source = true;
  bool reflective = true;
  std::vector<std::pair<int, double>> probes;  // (left node, weight of right node)

  int nodes() const { return grid.nodes(); }

  // Element-wise D applied to f, interface values averaged.
  void apply(const Matrix& M, const double* f, double* out) const {
    const int p = grid.poly_order;
    const int n = nodes();
    std::fill(out, out + n, 0.0);
    for (int e = 0; e < grid.elements; ++e) {
      const int base = e * p;
      for (int i = 0; i <= p; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= p; ++j) acc += M(i, j) * f[base + j];
        out[base + i] += acc;
      }
    }
    for (int k = 0; k < n; ++k) out[k] *= inv_mult[k];
  }
};

std::shared_ptr<const Operators> make_operators(const SweConfig& cfg, const Sampler& bed) {
  auto ops = std::make_shared<Operators>();
  ops->grid = swe_grid(cfg.elements, cfg.poly_order);
  const LglRule rule = lgl_nodes(cfg.poly_order);
  ops->D = rule.D * (2.0 / ops->grid.element_width);
  ops->g = cfg.g;
  ops->source = cfg.source;
  ops->reflective = cfg.bc == SweBoundary::reflective;

  const int p = cfg.poly_order;
  Matrix V(p + 1, p + 1);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j) V(i, j) = legendre(j, rule.nodes[i]);
  Vector damp = Vector::Ones(p + 1);
  damp[p] = std::exp(-cfg.filter_strength);
  ops->filter = V * damp.asDiagonal() * V.inverse();

  const int n = ops->grid.nodes();
  ops->inv_mult.assign(n, 1.0);
  for (int e = 1; e < cfg.elements; ++e) ops->inv_mult[e * p] = 0.5;

  std::vector<double> b(n);
  for (int k = 0; k < n; ++k) b[k] = bed(ops->grid.x[k]);
  ops->bed_slope.resize(n);
  ops->apply(ops->D, b.data(), ops->bed_slope.data());

  const auto& x = ops->grid.x;
  for (double s : cfg.sensors) {
    int i = static_cast<int>(std::upper_bound(x.begin(), x.end(), s) - x.begin()) - 1;
    i = std::clamp(i, 0, n - 2);
    ops->probes.emplace_back(i, (s - x[i]) / (x[i + 1] - x[i]));
  }
  return ops;
}

}  // namespace

ModelSpec swe_model(const SweConfig& cfg) {
  validate(cfg);
  const Sampler bed = cfg.hb ? cfg.hb : Sampler(swe_default_bed);
  auto ops = make_operators(cfg, bed);
  const int n = ops->nodes();

  ModelSpec m;
  m.id = "swe";
  m.dim = 2 * n;
  m.channels = static_cast<int>(cfg.sensors.size());
  m.resolution = cfg.elements;
  m.horizon = cfg.T;
  m.sample_times = uniform_times(cfg.T, cfg.nt);
  m.substeps = cfg.substeps;
  m.weighting = cfg.weighting;

  m.rhs = [ops, n](double, const Vector& q) -> Vector {
    Vector out(2 * n);
    std::vector<double> flux(n);
    const double* h = q.data();
    const double* mom = q.data() + n;
    ops->apply(ops->D, mom, out.data());
    for (int k = 0; k < n; ++k) {
      out[k] = -out[k];
      flux[k] = mom[k] * mom[k] / h[k] + 0.5 * ops->g * h[k] * h[k];
    }
    double* dm = out.data() + n;
    ops->apply(ops->D, flux.data(), dm);
    for (int k = 0; k < n; ++k) {
      dm[k] = -dm[k];
      if (ops->source) dm[k] -= ops->g * h[k] * ops->bed_slope[k];
    }
    if (ops->reflective) dm[0] = dm[n - 1] = 0.0;
    return out;
  };

  m.post_step = [ops, n](double t, Vector& q) {
    std::vector<double> tmp(n);
    for (int part = 0; part < 2; ++part) {
      double* f = q.data() + part * n;
      ops->apply(ops->filter, f, tmp.data());
      std::copy(tmp.begin(), tmp.end(), f);
    }
    if (ops->reflective) q[n] = q[2 * n - 1] = 0.0;
    for (int k = 0; k < n; ++k)
      if (!(q[k] > 0.0))
        throw NumericalError("swe", "dry state at t=" + std::to_string(t) +
                                        " x=" + std::to_string(ops->grid.x[k]));
  };

  m.observe = [ops](const Vector& q) -> Vector {
    Vector y(static_cast<Eigen::Index>(ops->probes.size()));
    for (size_t c = 0; c < ops->probes.size(); ++c) {
      const auto [i, w] = ops->probes[c];
      y[c] = (1.0 - w) * q[i] + w * q[i + 1];
    }
    return y;
  };

  m.state_norm = [ops](const Vector& q) {
    const int nn = ops->nodes();
    double s = 0.0;
    for (int k = 0; k < nn; ++k) s += ops->grid.mass[k] * (q[k] * q[k] + q[nn + k] * q[nn + k]);
    return std::sqrt(s);
  };

  m.restrict = [ops](const Sampler& f) -> Vector {
    const int nn = ops->nodes();
    Vector q = Vector::Zero(2 * nn);
    for (int k = 0; k < nn; ++k) q[k] = f(ops->grid.x[k]);
    return q;
  };
  m.lift = [ops](const Vector& q) -> Sampler {
    return [ops, h = Vector(q.head(ops->nodes()))](double x) {
      const auto& xs = ops->grid.x;
      if (x <= xs.front()) return h[0];
      if (x >= xs.back()) return h[h.size() - 1];
      const int i = static_cast<int>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
      const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
      return (1.0 - w) * h[i] + w * h[i + 1];
    };
  };
  m.continuum = Continuum{-1.0, 1.0, 1.0, n};
  return m;
}

Vector swe_nominal(const SweConfig& cfg) {
  const SweGrid grid = swe_grid(cfg.elements, cfg.poly_order);
  const Sampler h0 = cfg.h0 ? cfg.h0 : Sampler(cfg.literal_h0 ? swe_literal_h0 : swe_default_h0);
  const Sampler bed = cfg.hb ? cfg.hb : Sampler(swe_default_bed);
  const int n = grid.nodes();
  Vector q = Vector::Zero(2 * n);
  for (int k = 0; k < n; ++k)
    q[k] = h0(grid.x[k]) - (cfg.h0_is_surface ? bed(grid.x[k]) : 0.0);
  return q;
}

EstimationSpace swe_estimation_space(const SweConfig& cfg, int kf) {
  if (kf < 1) throw ConfigError("swe: K_F must be >= 1");
  const SweGrid grid = swe_grid(cfg.elements, cfg.poly_order);
  const int n = grid.nodes();
  EstimationSpace space;
  space.id = "swe_fourier_kf" + std::to_string(kf);
  auto add = [&](std::string label, auto&& f) {
    Vector e = Vector::Zero(2 * n);
    for (int k = 0; k < n; ++k) e[k] = f(grid.x[k]);
    space.basis.push_back(std::move(e));
    space.labels.push_back(std::move(label));
  };
  add("alpha_0", [](double) { return 0.5; });
  for (int k = 1; k <= kf; ++k)
    add("alpha_" + std::to_string(k), [k](double x) { return std::cos(k * std::numbers::pi * x); });
  for (int k = 1; k <= kf; ++k)
    add("beta_" + std::to_string(k), [k](double x) { return std::sin(k * std::numbers::pi * x); });
  space.inner = [mass = grid.mass, n](const Vector& a, const Vector& b) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += mass[k] * (a[k] * b[k] + a[n + k] * b[n + k]);
    return s;
  };
  return space;
}

double swe_mass(const SweConfig& cfg, const Vector& state) {
  const SweGrid grid = swe_grid(cfg.elements, cfg.poly_order);
  double s = 0.0;
  for (int k = 0; k < grid.nodes(); ++k) s += grid.mass[k] * state[k];
  return s;
}

}  // namespace pobs::models
