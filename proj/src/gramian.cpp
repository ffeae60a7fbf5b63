#include "pobs/gramian.hpp"

#include "pobs/csv.hpp"
#include "pobs/integrate.hpp"
#include "pobs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

namespace pobs {

double default_rho(const ModelSpec& model, const Vector& u0) {
  return 1e-3 * std::max(1.0, model.state_norm(u0));
}

PerturbationRunSet run_perturbations(const ModelSpec& model, const Vector& u0,
                                     const EstimationSpace& space, double rho, int jobs) {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  const int s = space.size();
  if (s == 0) throw ConfigError("empty estimation basis");
  for (const auto& e : space.basis)
    if (e.size() != model.dim) throw ConfigError("basis vector dimension does not match model");

  // Slot 0 is the nominal run, slots 2i+1 / 2i+2 are the +/- runs of direction i.
  std::vector<OutputSeries> outs(2 * s + 1);
  parallel_for(outs.size(), jobs, [&](size_t slot) {
    Vector x = u0;
    std::string label = "nominal";
    if (slot > 0) {
      const size_t i = (slot - 1) / 2;
      const double sign = (slot % 2) ? 1.0 : -1.0;
      x += sign * rho * space.basis[i];
      label = space.labels[i] + (sign > 0 ? " (+)" : " (-)");
    }
    try {
      outs[slot] = simulate_outputs(model, x);
    } catch (const NumericalError& e) {
      throw NumericalError("perturbation", "run along " + label + " failed: " + e.what());
    }
  });

  PerturbationRunSet runs;
  runs.rho = rho;
  runs.nominal = std::move(outs[0]);
  runs.deltas.reserve(s);
  for (int i = 0; i < s; ++i) runs.deltas.push_back(subtract(outs[2 * i + 1], outs[2 * i + 2]));
  return runs;
}

EmpiricalGramian assemble_gramian(const PerturbationRunSet& runs, const Matrix& S) {
  const auto s = static_cast<Eigen::Index>(runs.deltas.size());
  if (S.rows() != s || S.cols() != s)
    throw NumericalError("gramian", "Gram matrix size does not match the run set");
  EmpiricalGramian g;
  g.rho = runs.rho;
  g.S = S;
  g.G.resize(s, s);
  const double scale = 1.0 / (4.0 * runs.rho * runs.rho);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = i; j < s; ++j)
      g.G(i, j) = g.G(j, i) = scale * output_inner(runs.deltas[i], runs.deltas[j]);
  try {
    const SymmetricEigen eig = generalized_sym_eig(g.G, S);
    g.eigvals = eig.values;
    g.eigvecs = eig.vectors;
  } catch (const NumericalError& e) {
    if (e.stage() == "cholesky") throw NumericalError("gramian", "degenerate estimation basis");
    throw;
  }
  return g;
}

ObservabilityReport index_from_gramian(const EmpiricalGramian& g, double rho) {
  ObservabilityReport r;
  r.source = ReportSource::gramian;
  r.rho = rho;
  r.s = static_cast<int>(g.eigvals.size());
  const double smin = g.eigvals[0];
  const double smax = g.eigvals[g.eigvals.size() - 1];
  r.sigma_min = std::max(0.0, smin);
  if (!(smax > 0.0) || smin <= kUnobservableRatio * smax) {
    r.practically_unobservable = true;
    r.index = std::numeric_limits<double>::infinity();
    r.epsilon = 0.0;
    return r;
  }
  r.index = 1.0 / std::sqrt(smin);
  r.epsilon = rho * std::sqrt(smin);
  return r;
}

GramianAnalysis analyze(const ModelSpec& model, const Vector& u0, const EstimationSpace& space,
                        double rho, int jobs) {
  const Matrix S = gram_matrix(space);
  GramianAnalysis a;
  a.gramian = assemble_gramian(run_perturbations(model, u0, space, rho, jobs), S);
  a.report = index_from_gramian(a.gramian, rho);
  a.report.model_id = model.id;
  a.report.basis_id = space.id;
  a.report.resolution = model.resolution;
  return a;
}

namespace {

struct Vertex {
  Vector z;
  double f;
};

Vector unit(const Vector& v) {
  const double n = v.norm();
  return n > 0.0 ? Vector(v / n) : v;
}

struct StartResult {
  Vector z;
  double f = std::numeric_limits<double>::infinity();
  bool converged = false;
};

// Nelder-Mead on the unit sphere in R^s; every trial point is projected back.
template <class Objective, class ToCoeffs>
StartResult nelder_mead_sphere(const Objective& f, const ToCoeffs& coeffs, const Vector& start,
                               double tol_abs, int max_evals) {
  const Eigen::Index s = start.size();
  StartResult out;
  if (s == 1) {
    const Vector plus = Vector::Ones(1), minus = -Vector::Ones(1);
    const double fp = f(plus), fm = f(minus);
    out.z = fp <= fm ? plus : minus;
    out.f = std::min(fp, fm);
    out.converged = std::isfinite(out.f);
    return out;
  }

  const Vector z0 = unit(start);
  // Orthonormal tangent directions at z0.
  std::vector<Vector> tangents;
  for (Eigen::Index k = 0; k < s && static_cast<Eigen::Index>(tangents.size()) < s - 1; ++k) {
    Vector t = Vector::Unit(s, k);
    t -= t.dot(z0) * z0;
    for (const auto& q : tangents) t -= t.dot(q) * q;
    if (t.norm() > 1e-8) tangents.push_back(t / t.norm());
  }

  int evals = 0;
  auto eval = [&](const Vector& z) {
    ++evals;
    return f(z);
  };
  std::vector<Vertex> simplex;
  simplex.push_back({z0, eval(z0)});
  for (const auto& t : tangents) {
    const Vector z = unit(z0 + 0.3 * t);
    simplex.push_back({z, eval(z)});
  }

  auto diameter = [&] {
    double d = 0.0;
    const Vector c0 = coeffs(simplex[0].z);
    for (size_t i = 1; i < simplex.size(); ++i) d = std::max(d, (coeffs(simplex[i].z) - c0).norm());
    return d;
  };
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  const size_t n = simplex.size();
  while (true) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (diameter() < tol_abs) {
      out.converged = std::isfinite(simplex[0].f);
      break;
    }
    if (evals >= max_evals) break;

    Vector centroid = Vector::Zero(s);
    for (size_t i = 0; i + 1 < n; ++i) centroid += simplex[i].z;
    centroid /= static_cast<double>(n - 1);
    Vertex& worst = simplex[n - 1];

    const Vector zr = unit(centroid + (centroid - worst.z));
    const double fr = eval(zr);
    if (fr < simplex[0].f) {
      const Vector ze = unit(centroid + 2.0 * (centroid - worst.z));
      const double fe = eval(ze);
      worst = fe < fr ? Vertex{ze, fe} : Vertex{zr, fr};
      continue;
    }
    if (fr < simplex[n - 2].f) {
      worst = {zr, fr};
      continue;
    }
    const bool outside = fr < worst.f;
    const Vector zc = unit(centroid + 0.5 * ((outside ? zr : worst.z) - centroid));
    const double fc = eval(zc);
    if (outside ? fc <= fr : fc < worst.f) {
      worst = {zc, fc};
      continue;
    }
    for (size_t i = 1; i < n; ++i) {
      simplex[i].z = unit(simplex[0].z + 0.5 * (simplex[i].z - simplex[0].z));
      simplex[i].f = eval(simplex[i].z);
    }
  }
  out.z = simplex[0].z;
  out.f = simplex[0].f;
  return out;
}

}  // namespace

ObservabilityReport direct_epsilon(const ModelSpec& model, const Vector& u0,
                                   const EstimationSpace& space, double rho,
                                   const DirectOptions& opts) {
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
  const Matrix S = gram_matrix(space);
  const Matrix L = cholesky(S);
  const Eigen::Index s = S.rows();

  // c = rho L^{-T} z  gives  c^T S c = rho^2 |z|^2.
  auto coeffs = [&](const Vector& z) {
    Vector c = z;
    for (Eigen::Index i = s - 1; i >= 0; --i) {
      double v = c[i];
      for (Eigen::Index k = i + 1; k < s; ++k) v -= L(k, i) * c[k];
      c[i] = v / L(i, i);
    }
    return Vector(rho * c);
  };
  auto to_z = [&](const Vector& c) { return unit(Vector(L.transpose() * c)); };

  const OutputSeries nominal = simulate_outputs(model, u0);
  auto objective = [&](const Vector& z) {
    try {
      const Vector u = u0 + space.combine(coeffs(z));
      return output_norm(subtract(simulate_outputs(model, u), nominal));
    } catch (const NumericalError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::vector<Vector> starts;
  {
    const EmpiricalGramian g =
        assemble_gramian(run_perturbations(model, u0, space, rho, opts.jobs), S);
    const Vector xi = g.eigvecs.col(0);
    starts.push_back(to_z(xi));
    starts.push_back(to_z(-xi));
  }
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < opts.random_starts; ++k) {
    Vector z(s);
    for (Eigen::Index i = 0; i < s; ++i) z[i] = normal(rng);
    starts.push_back(unit(z));
  }
  for (const auto& c : opts.extra_starts) {
    if (c.size() != s) throw ConfigError("extra start has wrong dimension");
    starts.push_back(to_z(c));
  }

  std::vector<StartResult> results(starts.size());
  parallel_for(starts.size(), opts.jobs, [&](size_t i) {
    results[i] = nelder_mead_sphere(objective, coeffs, starts[i], opts.tol * rho,
                                    opts.max_evals_per_start);
  });

  size_t best = 0;
  for (size_t i = 1; i < results.size(); ++i)
    if (results[i].f < results[best].f) best = i;
  if (!std::isfinite(results[best].f))
    throw NumericalError("direct", "every optimizer start blew up");

  ObservabilityReport r;
  r.source = ReportSource::direct_optimization;
  r.rho = rho;
  r.epsilon = results[best].f;
  r.sigma_min = (r.epsilon / rho) * (r.epsilon / rho);
  r.index = r.epsilon > 0.0 ? rho / r.epsilon : std::numeric_limits<double>::infinity();
  r.practically_unobservable = !(r.epsilon > 0.0);
  r.direction = coeffs(results[best].z);
  r.converged = results[best].converged;
  r.model_id = model.id;
  r.basis_id = space.id;
  r.resolution = model.resolution;
  r.s = static_cast<int>(s);
  return r;
}

void write_gramian_csv(std::ostream& os, const EmpiricalGramian& g) {
  os << "i,j,Gij\n";
  for (Eigen::Index i = 0; i < g.G.rows(); ++i)
    for (Eigen::Index j = 0; j < g.G.cols(); ++j)
      os << i + 1 << ',' << j + 1 << ',' << fmt_num(g.G(i, j)) << '\n';
}

void write_eigen_csv(std::ostream& os, const EmpiricalGramian& g) {
  const Eigen::Index s = g.eigvals.size();
  os << "j,sigma_j";
  for (Eigen::Index i = 0; i < s; ++i) os << ",xi_" << i + 1;
  os << '\n';
  for (Eigen::Index j = 0; j < s; ++j) {
    os << j + 1 << ',' << fmt_num(g.eigvals[j]);
    for (Eigen::Index i = 0; i < s; ++i) os << ',' << fmt_num(g.eigvecs(i, j));
    os << '\n';
  }
}

}  // namespace pobs
