#include "pobs/gramian.hpp"
#include "pobs/integrate.hpp"
#include "pobs/models/heat.hpp"
#include "pobs/models/linear_pair.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace pobs;
using namespace pobs::models;

namespace {

// int_0^T y_i y_j dt for the heat point sensor with unit modal perturbations.
double heat_entry(int i, int j, const HeatConfig& c) {
  const double pi = std::numbers::pi;
  const double li = std::pow(i * pi / c.L, 2), lj = std::pow(j * pi / c.L, 2);
  const double ci = std::sin(i * pi * c.x0 / c.L), cj = std::sin(j * pi * c.x0 / c.L);
  return ci * cj * (1.0 - std::exp(-(li + lj) * c.T)) / (li + lj);
}

// Exact int_0^T y_i y_j dt for z' = -[[1, d], [0, 1]] z, y = z_1:
// e_1 -> y = e^{-t},  e_2 -> y = -d t e^{-t}.
Matrix linear_pair_exact(double d, double T) {
  const double e = std::exp(-2 * T);
  Matrix M(2, 2);
  M(0, 0) = (1 - e) / 2;
  M(0, 1) = M(1, 0) = -d * (0.25 - (T / 2 + 0.25) * e);
  M(1, 1) = d * d * (0.25 - (T * T / 2 + T / 2 + 0.25) * e);
  return M;
}

GramianAnalysis heat_analysis(int s, int N = 8) {
  HeatConfig cfg;
  cfg.N = N;
  return analyze(heat_model(cfg), heat_nominal(cfg), heat_estimation_space(cfg, s), 1e-3);
}

}  // namespace

TEST(HeatGramian, SingleModeValue) {
  const HeatConfig cfg;
  const auto a = heat_analysis(1);
  EXPECT_NEAR(a.gramian.G(0, 0), heat_entry(1, 1, cfg), 1e-6);
  EXPECT_NEAR(a.gramian.G(0, 0), 0.1216, 1e-4);
  EXPECT_NEAR(a.report.index, 1.0 / std::sqrt(a.report.sigma_min), 1e-12);
  EXPECT_NEAR(a.report.epsilon, 1e-3 * std::sqrt(a.report.sigma_min), 1e-15);
}

TEST(HeatGramian, MatchesClosedFormUpToEightModes) {
  const HeatConfig cfg;
  const auto a = heat_analysis(8);
  const Matrix ref = heat_gramian_closed_form(8, cfg);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      EXPECT_NEAR(a.gramian.G(i, j), heat_entry(i + 1, j + 1, cfg), 1e-6);
      EXPECT_NEAR(ref(i, j), heat_entry(i + 1, j + 1, cfg), 1e-15);
    }
}

TEST(HeatGramian, SigmaMinDecreasesWithModes) {
  double prev = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= 8; ++s) {
    const double sigma = heat_analysis(s).report.sigma_min;
    EXPECT_LT(sigma, prev) << "s=" << s;
    prev = sigma;
  }
}

TEST(HeatGramian, IndependentOfDiscretization) {
  const double ref = heat_analysis(3, 3).report.index;
  for (int N = 4; N <= 8; ++N) EXPECT_NEAR(heat_analysis(3, N).report.index, ref, 1e-12 * ref);
}

TEST(LinearPairGramian, MatchesExactOutputIntegrals) {
  for (double d : {0.01, 0.1}) {
    LinearPairConfig cfg;
    cfg.delta = d;
    const auto a = analyze(linear_pair_model(cfg), linear_pair_nominal(),
                           linear_pair_estimation_space(), 1e-3);
    const Matrix ref = linear_pair_exact(d, cfg.T);
    for (int i = 0; i < 2; ++i)
      // Trapezoid error ~ dt^2/12 * |f'(T) - f'(0)| = 1.04e-6 on the (1,1) entry.
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(a.gramian.G(i, j), ref(i, j), 2e-6) << d;
  }
}

TEST(LinearPairGramian, DecoupledIsPracticallyUnobservable) {
  LinearPairConfig cfg;
  cfg.delta = 0.0;
  const auto a = analyze(linear_pair_model(cfg), linear_pair_nominal(),
                         linear_pair_estimation_space(), 1e-3);
  EXPECT_TRUE(a.report.practically_unobservable);
  EXPECT_TRUE(std::isinf(a.report.index));
  EXPECT_EQ(a.report.epsilon, 0.0);
  EXPECT_TRUE(std::isinf(a.report.worst_error_bound(1.0)));
}

TEST(LinearPairGramian, ClosedFormSigmaOfReferenceMatrix) {
  EXPECT_NEAR(closed_form_sigma(0.1, 10.0), 0.04994, 5e-5);
  EXPECT_EQ(closed_form_sigma(0.0, 10.0), 0.0);
}

TEST(DirectEpsilon, AgreesWithGramianOnLinearModels) {
  {
    HeatConfig cfg;
    const auto space = heat_estimation_space(cfg, 3);
    const ModelSpec m = heat_model(cfg);
    const auto g = analyze(m, heat_nominal(cfg), space, 1e-3);
    const auto d = direct_epsilon(m, heat_nominal(cfg), space, 1e-3);
    EXPECT_EQ(d.source, ReportSource::direct_optimization);
    EXPECT_TRUE(d.converged);
    EXPECT_NEAR(d.epsilon / g.report.epsilon, 1.0, 1e-6);
  }
  {
    LinearPairConfig cfg;
    const ModelSpec m = linear_pair_model(cfg);
    const auto g = analyze(m, linear_pair_nominal(), linear_pair_estimation_space(), 1e-3);
    const auto d = direct_epsilon(m, linear_pair_nominal(), linear_pair_estimation_space(), 1e-3);
    EXPECT_NEAR(d.epsilon / g.report.epsilon, 1.0, 1e-6);
  }
}

TEST(DirectEpsilon, DeterministicForSeed) {
  LinearPairConfig cfg;
  cfg.nt = 200;
  const ModelSpec m = linear_pair_model(cfg);
  DirectOptions o;
  o.seed = 11;
  const auto a = direct_epsilon(m, linear_pair_nominal(), linear_pair_estimation_space(), 1e-3, o);
  o.jobs = 3;
  const auto b = direct_epsilon(m, linear_pair_nominal(), linear_pair_estimation_space(), 1e-3, o);
  EXPECT_EQ(a.epsilon, b.epsilon);
}

TEST(Perturbations, FailureNamesDirection) {
  ModelSpec m = linear_pair_model({});
  m.rhs = [](double, const Vector& z) -> Vector {
    if (z[1] < 0.99) return Vector::Constant(2, 1e20);
    return Vector::Zero(2);
  };
  try {
    run_perturbations(m, linear_pair_nominal(), linear_pair_estimation_space(), 0.1);
    FAIL() << "expected a failure";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("x2"), std::string::npos) << e.what();
  }
}

TEST(Perturbations, DegenerateBasisRejected) {
  EstimationSpace s = linear_pair_estimation_space();
  s.basis[1] = 2.0 * s.basis[0];
  EXPECT_THROW(analyze(linear_pair_model({}), linear_pair_nominal(), s, 1e-3), NumericalError);
}

TEST(Perturbations, DefaultRhoScalesWithState) {
  const ModelSpec m = linear_pair_model({});
  EXPECT_DOUBLE_EQ(default_rho(m, Vector::Zero(2)), 1e-3);
  EXPECT_DOUBLE_EQ(default_rho(m, Vector::Constant(2, 3.0)), 1e-3 * std::sqrt(18.0));
}

TEST(GramianCsv, HeadersAndRows) {
  const auto a = heat_analysis(2);
  std::ostringstream g, e;
  write_gramian_csv(g, a.gramian);
  write_eigen_csv(e, a.gramian);
  EXPECT_EQ(g.str().substr(0, 8), "i,j,Gij\n");
  EXPECT_EQ(e.str().substr(0, 20), "j,sigma_j,xi_1,xi_2\n");
  const std::string rows = g.str();
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 5);
}
