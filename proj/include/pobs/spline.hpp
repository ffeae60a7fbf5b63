#pragma once

#include <span>
#include <vector>

namespace pobs {

/// Natural cubic spline (zero second derivative at both ends) through strictly
/// increasing knots.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  const std::vector<double>& knots() const { return x_; }

 private:
  size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at knots
};

}  // namespace pobs
