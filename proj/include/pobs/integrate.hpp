#pragma once

#include "pobs/core.hpp"

#include <utility>

namespace pobs {

/// Any |state entry| above this aborts the run.
inline constexpr double kBlowUpThreshold = 1e12;

struct Trajectory {
  std::string model_id;
  Matrix states;  ///< row k = u(t_k)
  OutputSeries outputs;
  int substeps = 1;
};

/// Classical RK4 with step (t_{k+1} - t_k) / substeps between sample times.
Trajectory integrate_rk4(const ModelSpec& model, const Vector& u0, int substeps);

/// Uses the model's exact propagator when it has one, RK4 with model.substeps otherwise.
Trajectory simulate(const ModelSpec& model, const Vector& u0);

/// Outputs only; avoids storing the state history.
OutputSeries simulate_outputs(const ModelSpec& model, const Vector& u0);

/// q'' = a(q) with observation of q.
struct SecondOrderModel {
  std::string id;
  int dim = 0;
  int channels = 0;
  std::function<Vector(const Vector&)> accel;
  std::function<Vector(const Vector&)> observe;
  std::function<double(const Vector&, const Vector&)> energy;  // (q, v)
  std::function<double(const Vector&)> boundary_integrand;
  std::vector<double> sample_times;
  Weighting weighting = Weighting::unweighted;
};

struct EnergySeries {
  std::vector<double> times;
  std::vector<double> total_energy;
  std::vector<double> boundary_energy_integrand;
};

/// Velocity Verlet. Trajectory states are [q, v].
std::pair<Trajectory, EnergySeries> integrate_leapfrog(const SecondOrderModel& model,
                                                       const Vector& q0, const Vector& v0,
                                                       int substeps);

}  // namespace pobs
