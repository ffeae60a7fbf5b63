#pragma once

#include "pobs/types.hpp"

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pobs {

/// How samples of an output series are combined into ||y||_Y.
enum class Weighting {
  unweighted,    ///< sqrt(sum_k |y(t_k)|^2)
  dt_trapezoid,  ///< trapezoid rule for the time integral of |y|^2
  dt_right,      ///< right Riemann sum: samples t_1..t_Nt weighted by their step, t_0 dropped
};

std::string to_string(Weighting w);
Weighting parse_weighting(const std::string& s);

using RhsFn = std::function<Vector(double, const Vector&)>;
using ObserveFn = std::function<Vector(const Vector&)>;
using NormFn = std::function<double(const Vector&)>;
using LiftFn = std::function<Sampler(const Vector&)>;
using RestrictFn = std::function<Vector(const Sampler&)>;
using InnerFn = std::function<double(const Vector&, const Vector&)>;
/// Exact flow map u(t0) -> u(t1).
using PropagatorFn = std::function<Vector(double, double, const Vector&)>;
/// Applied in place after every internal integration step (filters, admissibility checks).
using PostStepFn = std::function<void(double, Vector&)>;

/// Interval and weight defining the continuum norm ||u||_X^2 = weight * int_a^b u^2 dx.
struct Continuum {
  double a = 0.0;
  double b = 1.0;
  double weight = 1.0;
  int resolution = 0;  ///< model grid resolution; quadrature runs at 8x this
};

/// A discretized dynamical system du/dt = F(t, u) with outputs y = H(Phi(u)).
///
/// rhs and observe must be pure: the perturbation stage calls them from
/// several threads at once.
struct ModelSpec {
  std::string id;
  int dim = 0;
  int channels = 0;
  RhsFn rhs;
  ObserveFn observe;
  NormFn state_norm;
  LiftFn lift;          // optional
  RestrictFn restrict;  // optional
  double horizon = 0.0;
  std::vector<double> sample_times;
  int substeps = 1;
  PropagatorFn propagator;  // optional; replaces RK4 when set
  PostStepFn post_step;     // optional
  std::optional<Continuum> continuum;
  Weighting weighting = Weighting::unweighted;
  int resolution = 0;  ///< the N this instance was built for
};

/// Uniform sample times t_k = k T / nt, k = 0..nt.
std::vector<double> uniform_times(double horizon, int nt);

/// Checks the structural invariants of a ModelSpec; throws ConfigError.
void validate(const ModelSpec& model);

/// Basis e_1..e_s of the estimation subspace W^N with its inner product.
struct EstimationSpace {
  std::string id;
  std::vector<Vector> basis;
  std::vector<std::string> labels;
  InnerFn inner;

  int size() const { return static_cast<int>(basis.size()); }
  /// Sum_j c_j e_j.
  Vector combine(const Vector& coeffs) const;
};

/// Sampled multi-channel output, one row per sample time.
struct OutputSeries {
  std::vector<double> times;
  Matrix values;
  Weighting weighting = Weighting::unweighted;

  int channels() const { return static_cast<int>(values.cols()); }
};

/// Per-sample quadrature weights implied by the weighting.
std::vector<double> sample_weights(const std::vector<double>& times, Weighting w);

double output_inner(const OutputSeries& a, const OutputSeries& b);
double output_norm(const OutputSeries& y);
/// Sample-by-sample a - b; throws when the time grids differ.
OutputSeries subtract(const OutputSeries& a, const OutputSeries& b);

/// S_ij = <e_i, e_j>; upper triangle computed, lower mirrored.
Matrix gram_matrix(const EstimationSpace& space);

enum class ReportSource { gramian, direct_optimization };
std::string to_string(ReportSource s);

struct ObservabilityReport {
  double sigma_min = 0.0;
  double index = 0.0;    ///< rho / epsilon
  double epsilon = 0.0;
  double rho = 0.0;
  ReportSource source = ReportSource::gramian;
  bool practically_unobservable = false;
  std::string model_id;
  std::string basis_id;
  int resolution = 0;
  int s = 0;
  /// Minimizing perturbation coefficients (direct optimization only).
  Vector direction;
  bool converged = true;

  /// Worst initial-state error caused by a sensor error of size sensor_error.
  double worst_error_bound(double sensor_error) const;
};

/// Composite Simpson rule on [a, b] with an even number of intervals (rounded up).
double simpson(const Sampler& f, double a, double b, int intervals);

/// ||u||_X by Simpson quadrature at 8x the model's continuum resolution.
double continuum_norm(const ModelSpec& model, const Sampler& u);

/// | ||u||_X - ||P u||_N | / ||P u||_N for one continuum function.
double norm_defect(const ModelSpec& model, const Sampler& u);

/// Norm-consistency defects a_N for samples that must lie in the estimation space.
std::vector<double> norm_consistency_check(const EstimationSpace& space, const ModelSpec& model,
                                           std::span<const Sampler> samples);

}  // namespace pobs
