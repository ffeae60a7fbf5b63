#include "pobs/integrate.hpp"

#include <cmath>

namespace pobs {

namespace {

void check_finite(const Vector& u, double t) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!std::isfinite(u[i]) || std::abs(u[i]) > kBlowUpThreshold)
      throw BlowUpError(t, " (component " + std::to_string(i) + ")");
  }
}

void rk4_step(const ModelSpec& m, double t, double h, Vector& u) {
  const Vector k1 = m.rhs(t, u);
  const Vector k2 = m.rhs(t + 0.5 * h, u + 0.5 * h * k1);
  const Vector k3 = m.rhs(t + 0.5 * h, u + 0.5 * h * k2);
  const Vector k4 = m.rhs(t + h, u + h * k3);
  u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Advances u from sample k to k+1.
void advance(const ModelSpec& m, size_t k, int substeps, bool exact, Vector& u) {
  const double t0 = m.sample_times[k];
  const double t1 = m.sample_times[k + 1];
  if (exact) {
    u = m.propagator(t0, t1, u);
    check_finite(u, t1);
    return;
  }
  const double h = (t1 - t0) / substeps;
  for (int j = 0; j < substeps; ++j) {
    const double t = t0 + j * h;
    rk4_step(m, t, h, u);
    if (m.post_step) m.post_step(t + h, u);
    check_finite(u, t + h);
  }
}

template <class Sink>
void run(const ModelSpec& m, const Vector& u0, int substeps, bool exact, Sink&& sink) {
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  if (u0.size() != m.dim) throw ConfigError(m.id + ": initial state has wrong dimension");
  check_finite(u0, 0.0);
  Vector u = u0;
  sink(0, u);
  for (size_t k = 0; k + 1 < m.sample_times.size(); ++k) {
    advance(m, k, substeps, exact, u);
    sink(k + 1, u);
  }
}

OutputSeries empty_outputs(const ModelSpec& m) {
  return OutputSeries{m.sample_times,
                      Matrix(static_cast<Eigen::Index>(m.sample_times.size()), m.channels),
                      m.weighting};
}

Trajectory integrate(const ModelSpec& m, const Vector& u0, int substeps, bool exact) {
  Trajectory traj{m.id, Matrix(static_cast<Eigen::Index>(m.sample_times.size()), m.dim),
                  empty_outputs(m), substeps};
  run(m, u0, substeps, exact, [&](size_t k, const Vector& u) {
    traj.states.row(k) = u.transpose();
    traj.outputs.values.row(k) = m.observe(u).transpose();
  });
  traj.states.row(0) = u0.transpose();
  return traj;
}

}  // namespace

Trajectory integrate_rk4(const ModelSpec& model, const Vector& u0, int substeps) {
  if (!model.rhs) throw ConfigError(model.id + ": no right-hand side for RK4");
  return integrate(model, u0, substeps, false);
}

Trajectory simulate(const ModelSpec& model, const Vector& u0) {
  return integrate(model, u0, model.substeps, static_cast<bool>(model.propagator));
}

OutputSeries simulate_outputs(const ModelSpec& model, const Vector& u0) {
  OutputSeries out = empty_outputs(model);
  run(model, u0, model.substeps, static_cast<bool>(model.propagator),
      [&](size_t k, const Vector& u) { out.values.row(k) = model.observe(u).transpose(); });
  return out;
}

std::pair<Trajectory, EnergySeries> integrate_leapfrog(const SecondOrderModel& m,
                                                       const Vector& q0, const Vector& v0,
                                                       int substeps) {
  if (substeps < 1) throw ConfigError("substeps must be >= 1");
  if (q0.size() != m.dim || v0.size() != m.dim)
    throw ConfigError(m.id + ": initial data has wrong dimension");
  const auto nsamples = static_cast<Eigen::Index>(m.sample_times.size());
  Trajectory traj{m.id, Matrix(nsamples, 2 * m.dim),
                  OutputSeries{m.sample_times, Matrix(nsamples, m.channels), m.weighting},
                  substeps};
  EnergySeries energy{m.sample_times, {}, {}};

  Vector q = q0, v = v0;
  auto record = [&](Eigen::Index k) {
    traj.states.row(k).head(m.dim) = q.transpose();
    traj.states.row(k).tail(m.dim) = v.transpose();
    traj.outputs.values.row(k) = m.observe(q).transpose();
    if (m.energy) energy.total_energy.push_back(m.energy(q, v));
    if (m.boundary_integrand) energy.boundary_energy_integrand.push_back(m.boundary_integrand(q));
  };
  check_finite(q, 0.0);
  check_finite(v, 0.0);
  record(0);
  Vector a = m.accel(q);
  for (Eigen::Index k = 0; k + 1 < nsamples; ++k) {
    const double h = (m.sample_times[k + 1] - m.sample_times[k]) / substeps;
    for (int j = 0; j < substeps; ++j) {
      v += 0.5 * h * a;
      q += h * v;
      a = m.accel(q);
      v += 0.5 * h * a;
    }
    check_finite(q, m.sample_times[k + 1]);
    check_finite(v, m.sample_times[k + 1]);
    record(k + 1);
  }
  return {std::move(traj), std::move(energy)};
}

}  // namespace pobs
