#include "pobs/core.hpp"

#include "pobs/linalg.hpp"

#include <cmath>

namespace pobs {

std::string to_string(Weighting w) {
  switch (w) {
    case Weighting::unweighted: return "unweighted";
    case Weighting::dt_trapezoid: return "dt";
    case Weighting::dt_right: return "dt-right";
  }
  return "?";
}

Weighting parse_weighting(const std::string& s) {
  if (s == "unweighted") return Weighting::unweighted;
  if (s == "dt") return Weighting::dt_trapezoid;
  if (s == "dt-right") return Weighting::dt_right;
  throw ConfigError("unknown weighting '" + s + "' (expected unweighted|dt|dt-right)");
}

std::string to_string(ReportSource s) {
  return s == ReportSource::gramian ? "gramian" : "direct_optimization";
}

std::vector<double> uniform_times(double horizon, int nt) {
  if (nt < 1) throw ConfigError("need at least one output interval");
  std::vector<double> t(nt + 1);
  for (int k = 0; k <= nt; ++k) t[k] = horizon * k / nt;
  t[nt] = horizon;
  return t;
}

void validate(const ModelSpec& m) {
  if (m.dim <= 0) throw ConfigError(m.id + ": state dimension must be positive");
  if (m.channels <= 0) throw ConfigError(m.id + ": no output channels");
  if (!m.rhs && !m.propagator) throw ConfigError(m.id + ": no dynamics");
  if (!m.observe || !m.state_norm) throw ConfigError(m.id + ": missing observe or state norm");
  if (!(m.horizon > 0.0)) throw ConfigError(m.id + ": horizon must be positive");
  if (m.sample_times.size() < 2 || m.sample_times.front() != 0.0 ||
      m.sample_times.back() != m.horizon)
    throw ConfigError(m.id + ": sample times must run from 0 to the horizon");
  for (size_t k = 1; k < m.sample_times.size(); ++k)
    if (!(m.sample_times[k] > m.sample_times[k - 1]))
      throw ConfigError(m.id + ": sample times must be strictly increasing");
  if (m.substeps < 1) throw ConfigError(m.id + ": substeps must be >= 1");
}

Vector EstimationSpace::combine(const Vector& coeffs) const {
  Vector out = Vector::Zero(basis.front().size());
  for (int j = 0; j < size(); ++j) out += coeffs[j] * basis[j];
  return out;
}

std::vector<double> sample_weights(const std::vector<double>& t, Weighting w) {
  const size_t n = t.size();
  std::vector<double> wt(n, 1.0);
  if (w == Weighting::unweighted || n < 2) return wt;
  if (w == Weighting::dt_right) {
    wt[0] = 0.0;
    for (size_t k = 1; k < n; ++k) wt[k] = t[k] - t[k - 1];
    return wt;
  }
  wt[0] = 0.5 * (t[1] - t[0]);
  wt[n - 1] = 0.5 * (t[n - 1] - t[n - 2]);
  for (size_t k = 1; k + 1 < n; ++k) wt[k] = 0.5 * (t[k + 1] - t[k - 1]);
  return wt;
}

double output_inner(const OutputSeries& a, const OutputSeries& b) {
  if (a.times != b.times || a.values.cols() != b.values.cols())
    throw Error("output series are not on the same grid");
  if (a.weighting != b.weighting) throw Error("output series use different weightings");
  const auto w = sample_weights(a.times, a.weighting);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < a.values.rows(); ++k)
    sum += w[k] * a.values.row(k).dot(b.values.row(k));
  return sum;
}

double output_norm(const OutputSeries& y) {
  if (y.values.rows() == 0 || y.times.empty()) throw Error("empty output");
  return std::sqrt(output_inner(y, y));
}

OutputSeries subtract(const OutputSeries& a, const OutputSeries& b) {
  if (a.times != b.times || a.values.cols() != b.values.cols())
    throw Error("output series are not on the same grid");
  return OutputSeries{a.times, a.values - b.values, a.weighting};
}

Matrix gram_matrix(const EstimationSpace& space) {
  const int s = space.size();
  if (s == 0) throw Error("empty estimation basis");
  Matrix S(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      const double v = space.inner(space.basis[i], space.basis[j]);
      if (!std::isfinite(v))
        throw NumericalError("gram_matrix", "non-finite inner product <" + space.labels[i] + "," +
                                                space.labels[j] + ">");
      S(i, j) = v;
      S(j, i) = v;
    }
  }
  return S;
}

double ObservabilityReport::worst_error_bound(double sensor_error) const {
  if (practically_unobservable || sigma_min <= 0.0)
    return std::numeric_limits<double>::infinity();
  return sensor_error / std::sqrt(sigma_min);
}

double simpson(const Sampler& f, double a, double b, int intervals) {
  int n = std::max(2, intervals);
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

double continuum_norm(const ModelSpec& model, const Sampler& u) {
  if (!model.continuum) throw Error(model.id + ": model has no continuum representation");
  const auto& c = *model.continuum;
  const int res = c.resolution > 0 ? c.resolution : model.dim;
  const double integral = simpson([&](double x) { const double v = u(x); return v * v; }, c.a,
                                  c.b, 8 * res);
  return std::sqrt(c.weight * integral);
}

double norm_defect(const ModelSpec& model, const Sampler& u) {
  if (!model.restrict) throw Error(model.id + ": model has no restrict map");
  const double discrete = model.state_norm(model.restrict(u));
  if (!(discrete > 0.0)) throw Error("degenerate sample");
  return std::abs(continuum_norm(model, u) - discrete) / discrete;
}

std::vector<double> norm_consistency_check(const EstimationSpace& space, const ModelSpec& model,
                                           std::span<const Sampler> samples) {
  const Matrix S = gram_matrix(space);
  const Matrix L = cholesky(S);
  std::vector<double> defects;
  defects.reserve(samples.size());
  for (const auto& u : samples) {
    const Vector v = model.restrict(u);
    const double vv = space.inner(v, v);
    if (!(vv > 0.0)) throw Error("degenerate sample");
    // Residual of the S-orthogonal projection onto span(basis).
    Vector rhs(space.size());
    for (int j = 0; j < space.size(); ++j) rhs[j] = space.inner(space.basis[j], v);
    const Vector c = cholesky_solve(L, rhs);
    const Vector r = v - space.combine(c);
    if (space.inner(r, r) > 1e-12 * vv) throw Error("sample does not lie in the estimation space");
    defects.push_back(norm_defect(model, u));
  }
  return defects;
}

}  // namespace pobs
