#pragma once

#include "pobs/core.hpp"
#include "pobs/linalg.hpp"

#include <cstdint>
#include <iosfwd>

namespace pobs {

/// Output differences of the +/- rho runs along each basis direction.
struct PerturbationRunSet {
  double rho = 0.0;
  std::vector<OutputSeries> deltas;  ///< deltas[i] = y(u0 + rho e_i) - y(u0 - rho e_i)
  OutputSeries nominal;
};

struct EmpiricalGramian {
  Matrix G;
  double rho = 0.0;
  Matrix S;
  Vector eigvals;  ///< generalized eigenvalues relative to S, ascending
  Matrix eigvecs;  ///< columns xi_j with xi_j^T S xi_j = 1
};

/// rho = 1e-3 * max(1, ||u0||_N).
double default_rho(const ModelSpec& model, const Vector& u0);

/// 2s+1 integrations: nominal plus +/- rho along each basis vector. Output
/// differences are formed observe-then-subtract.
PerturbationRunSet run_perturbations(const ModelSpec& model, const Vector& u0,
                                     const EstimationSpace& space, double rho, int jobs = 1);

/// G_ij = <dy_i, dy_j>_Y / (4 rho^2), followed by the generalized eigen-solve.
EmpiricalGramian assemble_gramian(const PerturbationRunSet& runs, const Matrix& S);

/// Relative cutoff below which the Gramian is treated as singular.
inline constexpr double kUnobservableRatio = 1e-14;

/// rho/epsilon ~ 1/sqrt(sigma_min).
ObservabilityReport index_from_gramian(const EmpiricalGramian& g, double rho);

/// Convenience: perturbations, Gramian, and report in one call.
struct GramianAnalysis {
  EmpiricalGramian gramian;
  ObservabilityReport report;
};
GramianAnalysis analyze(const ModelSpec& model, const Vector& u0, const EstimationSpace& space,
                        double rho, int jobs = 1);

struct DirectOptions {
  std::uint64_t seed = 0;
  int random_starts = 8;
  /// Converged when the simplex diameter (in coefficient space) drops below tol * rho.
  double tol = 1e-8;
  int max_evals_per_start = 4000;
  /// Additional starting coefficient vectors; rescaled onto the rho-sphere.
  std::vector<Vector> extra_starts;
  int jobs = 1;
};

/// epsilon^N = inf ||y(u0 + du) - y(u0)||_Y over du in span(basis), ||du||_N = rho,
/// by multi-start Nelder-Mead on the S-sphere.
ObservabilityReport direct_epsilon(const ModelSpec& model, const Vector& u0,
                                   const EstimationSpace& space, double rho,
                                   const DirectOptions& opts = {});

void write_gramian_csv(std::ostream& os, const EmpiricalGramian& g);
void write_eigen_csv(std::ostream& os, const EmpiricalGramian& g);

}  // namespace pobs
