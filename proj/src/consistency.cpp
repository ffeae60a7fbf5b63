#include "pobs/consistency.hpp"

#include "pobs/integrate.hpp"
#include "pobs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pobs {

std::optional<size_t> find_plateau(const std::vector<double>& v, double tol) {
  if (v.size() < 3) return std::nullopt;
  auto flat = [&](size_t i) {
    const double denom = std::abs(v[i - 1]);
    return std::isfinite(v[i]) && std::isfinite(v[i - 1]) && denom > 0.0 &&
           std::abs(v[i] - v[i - 1]) / denom < tol;
  };
  size_t start = v.size() - 1;
  while (start > 0 && flat(start)) --start;
  // v[start..end] is the trailing flat run; it needs two increments.
  if (v.size() - 1 - start >= 2) return start;
  return std::nullopt;
}

SweepResult index_sweep(const ProblemFactory& factory, const std::vector<int>& resolutions,
                        std::optional<double> rho, int jobs) {
  if (resolutions.size() < 3) throw ConfigError("a sweep needs at least three resolutions");
  for (size_t i = 1; i < resolutions.size(); ++i)
    if (resolutions[i] <= resolutions[i - 1])
      throw ConfigError("sweep resolutions must be strictly increasing");

  SweepResult out;
  if (rho) {
    out.rho = *rho;
  } else {
    const models::Problem p = factory(resolutions.front());
    out.rho = default_rho(p.model, p.u0);
  }

  struct Slot {
    double index = 0.0, sigma = 0.0;
    std::string error;
  };
  std::vector<Slot> slots(resolutions.size());
  parallel_for(slots.size(), jobs, [&](size_t i) {
    try {
      const models::Problem p = factory(resolutions[i]);
      const GramianAnalysis a = analyze(p.model, p.u0, p.space, out.rho);
      slots[i].index = a.report.index;
      slots[i].sigma = a.report.sigma_min;
    } catch (const std::exception& e) {
      slots[i].error = "N=" + std::to_string(resolutions[i]) + ": " + e.what();
    }
  });

  for (size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i].error.empty()) {
      out.failure = slots[i].error;
      break;
    }
    out.resolutions.push_back(resolutions[i]);
    out.indices.push_back(slots[i].index);
    out.sigmas.push_back(slots[i].sigma);
  }
  if (const auto start = find_plateau(out.indices)) {
    out.stabilized_at = out.resolutions[*start];
    out.stabilized_value = out.indices.back();
  }
  return out;
}

ProblemFactory problem_family(const models::ModelConfig& base, const models::EstimationConfig& est) {
  return [base, est](int n) { return models::make_problem(models::with_resolution(base, n), est); };
}

std::string to_string(WaveData d) { return d == WaveData::low_mode ? "low_mode" : "high_mode"; }

double wave_energy_ratio(const models::WaveConfig& cfg, const Vector& q0, const Vector& v0) {
  const models::WaveModel w = models::wave_model(cfg);
  const auto [traj, energy] = integrate_leapfrog(w.second_order, q0, v0, cfg.substeps);
  const double boundary = models::boundary_energy(energy);
  if (!(boundary > 0.0) || !(energy.total_energy.front() > 0.0))
    throw NumericalError("wave", "zero energy: the ratio is undefined for zero data");
  return energy.total_energy.front() / boundary;
}

RatioStudyResult wave_ratio_study(const std::vector<int>& resolutions, WaveData family,
                                  const models::WaveConfig& base) {
  for (size_t i = 1; i < resolutions.size(); ++i)
    if (resolutions[i] <= resolutions[i - 1])
      throw ConfigError("wave resolutions must be strictly increasing");
  RatioStudyResult r;
  r.family = family;
  for (int n : resolutions) {
    models::WaveConfig cfg = base;
    cfg.N = n;
    const Vector q0 =
        family == WaveData::low_mode ? models::wave_low_mode(cfg) : models::wave_high_mode(cfg);
    r.resolutions.push_back(n);
    r.ratios.push_back(wave_energy_ratio(cfg, q0, Vector::Zero(n)));
  }
  return r;
}

SensorSweepResult sensor_sweep(const models::ModelConfig& base, const models::EstimationConfig& est,
                               const std::vector<std::vector<double>>& candidates,
                               std::optional<double> rho, int jobs) {
  if (candidates.size() < 2) throw ConfigError("a sensor sweep needs at least two candidates");
  const size_t nc = candidates.size();
  SensorSweepResult out;
  out.candidates = candidates;
  out.indices.assign(nc, std::numeric_limits<double>::quiet_NaN());
  out.sigmas.assign(nc, std::numeric_limits<double>::quiet_NaN());
  out.failures.assign(nc, "");

  std::vector<std::optional<models::Problem>> problems(nc);
  for (size_t c = 0; c < nc; ++c) {
    try {
      problems[c] = models::make_problem(models::with_sensors(base, candidates[c]), est);
    } catch (const std::exception& e) {
      out.failures[c] = e.what();
    }
  }
  const auto first = std::find_if(problems.begin(), problems.end(),
                                  [](const auto& p) { return p.has_value(); });
  if (first == problems.end()) return out;
  const models::Problem& ref = **first;
  const double r = rho ? *rho : default_rho(ref.model, ref.u0);
  const int s = ref.space.size();

  // outputs[run][candidate]; run 2i / 2i+1 are the +/- runs along e_i.
  std::vector<std::vector<OutputSeries>> outputs(2 * s);
  std::vector<std::string> run_error(2 * s);
  parallel_for(outputs.size(), jobs, [&](size_t run) {
    const size_t i = run / 2;
    const double sign = run % 2 ? -1.0 : 1.0;
    try {
      const Trajectory traj = simulate(ref.model, ref.u0 + sign * r * ref.space.basis[i]);
      outputs[run].resize(nc);
      for (size_t c = 0; c < nc; ++c) {
        if (!problems[c]) continue;
        const ModelSpec& m = problems[c]->model;
        OutputSeries y{m.sample_times, Matrix(traj.states.rows(), m.channels), m.weighting};
        for (Eigen::Index k = 0; k < traj.states.rows(); ++k)
          y.values.row(k) = m.observe(traj.states.row(k).transpose()).transpose();
        outputs[run][c] = std::move(y);
      }
    } catch (const std::exception& e) {
      run_error[run] = ref.space.labels[i] + ": " + e.what();
    }
  });
  for (const auto& err : run_error) {
    if (err.empty()) continue;
    for (size_t c = 0; c < nc; ++c)
      if (out.failures[c].empty()) out.failures[c] = err;
    return out;
  }

  const Matrix S = gram_matrix(ref.space);
  for (size_t c = 0; c < nc; ++c) {
    if (!problems[c]) continue;
    try {
      PerturbationRunSet runs;
      runs.rho = r;
      for (int i = 0; i < s; ++i)
        runs.deltas.push_back(subtract(outputs[2 * i][c], outputs[2 * i + 1][c]));
      const ObservabilityReport rep = index_from_gramian(assemble_gramian(runs, S), r);
      out.indices[c] = rep.index;
      out.sigmas[c] = rep.sigma_min;
    } catch (const std::exception& e) {
      out.failures[c] = e.what();
    }
  }
  for (size_t c = 0; c < nc; ++c)
    if (out.failures[c].empty()) out.ranking.push_back(c);
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&](size_t a, size_t b) { return out.indices[a] < out.indices[b]; });
  return out;
}

}  // namespace pobs
