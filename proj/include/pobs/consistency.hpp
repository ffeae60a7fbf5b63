#pragma once

#include "pobs/gramian.hpp"
#include "pobs/models/registry.hpp"

#include <optional>

namespace pobs {

struct SweepResult {
  std::vector<int> resolutions;
  std::vector<double> indices;
  std::vector<double> sigmas;
  std::optional<int> stabilized_at;
  std::optional<double> stabilized_value;
  double rho = 0.0;
  std::string failure;  ///< empty unless a resolution failed; earlier results are kept
};

/// Relative change below which consecutive indices count as flat.
inline constexpr double kStabilizationTolerance = 0.01;

/// Start of the trailing run of at least two consecutive relative changes below tol.
std::optional<size_t> find_plateau(const std::vector<double>& values,
                                   double tol = kStabilizationTolerance);

using ProblemFactory = std::function<models::Problem(int)>;

/// Gramian index at each resolution with one absolute rho. When rho is empty it is
/// chosen by default_rho at the first resolution and reused.
SweepResult index_sweep(const ProblemFactory& factory, const std::vector<int>& resolutions,
                        std::optional<double> rho, int jobs = 1);

/// Factory that rebuilds `base` at each resolution.
ProblemFactory problem_family(const models::ModelConfig& base,
                              const models::EstimationConfig& est = {});

enum class WaveData { low_mode, high_mode };
std::string to_string(WaveData d);

struct RatioStudyResult {
  std::vector<int> resolutions;
  std::vector<double> ratios;  ///< E_h(0) / boundary energy
  WaveData family = WaveData::low_mode;
};

/// E_h(0) / sum_k dt |u_N(t_k)/h|^2 for one initial datum.
double wave_energy_ratio(const models::WaveConfig& cfg, const Vector& q0, const Vector& v0);

RatioStudyResult wave_ratio_study(const std::vector<int>& resolutions, WaveData family,
                                  const models::WaveConfig& base = {});

struct SensorSweepResult {
  std::vector<std::vector<double>> candidates;
  std::vector<double> indices;
  std::vector<double> sigmas;
  std::vector<std::string> failures;  ///< empty string for successful candidates
  std::vector<size_t> ranking;        ///< successful candidates, ascending index
};

/// One Gramian index per sensor set. State trajectories are computed once per
/// perturbation and observed through every candidate, since sensors do not enter
/// the dynamics.
SensorSweepResult sensor_sweep(const models::ModelConfig& base, const models::EstimationConfig& est,
                               const std::vector<std::vector<double>>& candidates,
                               std::optional<double> rho, int jobs = 1);

}  // namespace pobs
