#include "pobs/spline.hpp"
#include "pobs/types.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pobs;

TEST(Spline, InterpolatesKnots) {
  const std::vector<double> x{0, 0.5, 1.3, 2, 3}, y{1, -1, 2, 0, 4};
  NaturalCubicSpline s(x, y);
  for (size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s(x[i]), y[i], 1e-14);
}

TEST(Spline, ReproducesLinearData) {
  std::vector<double> x, y;
  for (int i = 0; i <= 6; ++i) {
    x.push_back(i * 0.7);
    y.push_back(2 - 3 * x.back());
  }
  NaturalCubicSpline s(x, y);
  EXPECT_NEAR(s(1.234), 2 - 3 * 1.234, 1e-13);
  EXPECT_NEAR(s.derivative(3.1), -3.0, 1e-12);
}

TEST(Spline, NaturalEndConditions) {
  NaturalCubicSpline s({0, 1, 2, 3}, {0, 1, 0, 1});
  EXPECT_NEAR(s.second_derivative(0.0), 0.0, 1e-14);
  EXPECT_NEAR(s.second_derivative(3.0), 0.0, 1e-14);
}

TEST(Spline, ConvergesForSmoothFunction) {
  auto err = [](int n) {
    std::vector<double> x, y;
    for (int i = 0; i <= n; ++i) {
      x.push_back(M_PI * i / n);
      y.push_back(std::sin(x.back()));  // f'' = 0 at both ends, so natural BCs are exact
    }
    NaturalCubicSpline s(x, y);
    double e = 0;
    for (int k = 0; k < 1000; ++k) e = std::max(e, std::abs(s(M_PI * (k + 0.5) / 1000) - std::sin(M_PI * (k + 0.5) / 1000)));
    return e;
  };
  EXPECT_LT(err(40), err(20) / 10.0);
}

TEST(Spline, RejectsBadKnots) {
  EXPECT_THROW(NaturalCubicSpline({0, 0, 1}, {1, 2, 3}), Error);
  EXPECT_THROW(NaturalCubicSpline({0, 1}, {1}), Error);
}
