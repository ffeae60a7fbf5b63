#include "pobs/integrate.hpp"
#include "pobs/models/wave.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pobs;

namespace {

// Harmonic oscillator u = (x, v), x'' = -x, observed through x.
ModelSpec oscillator(double T, int nt) {
  ModelSpec m;
  m.id = "osc";
  m.dim = 2;
  m.channels = 1;
  m.horizon = T;
  m.sample_times = uniform_times(T, nt);
  m.rhs = [](double, const Vector& u) -> Vector {
    Vector d(2);
    d << u[1], -u[0];
    return d;
  };
  m.observe = [](const Vector& u) -> Vector { return u.head(1); };
  m.state_norm = [](const Vector& u) { return u.norm(); };
  return m;
}

}  // namespace

TEST(Rk4, FourthOrderConvergence) {
  const ModelSpec m = oscillator(5.0, 10);
  Vector u0(2);
  u0 << 1.0, 0.0;
  auto err = [&](int sub) {
    const Trajectory tr = integrate_rk4(m, u0, sub);
    const double x = tr.states(tr.states.rows() - 1, 0);
    return std::abs(x - std::cos(5.0));
  };
  const double e1 = err(4), e2 = err(8), e3 = err(16);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.2);
  EXPECT_NEAR(std::log2(e2 / e3), 4.0, 0.2);
}

TEST(Rk4, SamplesAtRequestedTimes) {
  const ModelSpec m = oscillator(1.0, 4);
  const Trajectory tr = simulate(m, Vector::Unit(2, 0));
  ASSERT_EQ(tr.states.rows(), 5);
  EXPECT_EQ(tr.outputs.times, m.sample_times);
  EXPECT_DOUBLE_EQ(tr.outputs.values(0, 0), 1.0);
}

TEST(Rk4, BlowUpDetected) {
  ModelSpec m = oscillator(2.0, 20);
  m.rhs = [](double, const Vector& u) -> Vector { return u.array().square().matrix(); };
  try {
    simulate(m, Vector::Ones(2));
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_NE(std::string(e.what()).find("blow-up at t="), std::string::npos);
  }
}

TEST(Rk4, PropagatorReplacesIntegration) {
  ModelSpec m = oscillator(1.0, 2);
  m.propagator = [](double t0, double t1, const Vector& u) -> Vector { return u * std::exp(t1 - t0); };
  const Trajectory tr = simulate(m, Vector::Unit(2, 0));
  EXPECT_NEAR(tr.states(2, 0), std::exp(1.0), 1e-14);
}

TEST(Leapfrog, WaveEnergyDriftSmall) {
  models::WaveConfig cfg;
  const models::WaveModel w = models::wave_model(cfg);
  for (const Vector& q0 : {models::wave_low_mode(cfg), models::wave_high_mode(cfg)}) {
    const auto [traj, energy] =
        integrate_leapfrog(w.second_order, q0, Vector::Zero(cfg.N), cfg.substeps);
    double drift = 0;
    for (double e : energy.total_energy)
      drift = std::max(drift, std::abs(e - energy.total_energy.front()) / energy.total_energy.front());
    EXPECT_LT(drift, 1e-3);
  }
}
