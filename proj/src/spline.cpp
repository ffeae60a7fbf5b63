#include "pobs/spline.hpp"

#include "pobs/types.hpp"

#include <algorithm>

namespace pobs {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), m_(x_.size(), 0.0) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw Error("spline needs at least two knots with values");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw Error("spline knots must be strictly increasing");
  if (n == 2) return;

  // Tridiagonal system for the interior second derivatives (Thomas algorithm).
  const size_t k = n - 2;
  std::vector<double> diag(k), upper(k), rhs(k);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (size_t i = 1; i < k; ++i) {
    const double lower = x_[i + 1] - x_[i];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (size_t i = k - 1; i >= 1; --i) m_[i] = (rhs[i - 1] - upper[i - 1] * m_[i + 1]) / diag[i - 1];
}

size_t NaturalCubicSpline::segment(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<size_t>(it - x_.begin()) - 1;
}

double NaturalCubicSpline::operator()(double x) const {
  const size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double x) const {
  const size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h * m_[i] / 6.0 +
         (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
}

double NaturalCubicSpline::second_derivative(double x) const {
  const size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double b = (x - x_[i]) / h;
  return (1.0 - b) * m_[i] + b * m_[i + 1];
}

}  // namespace pobs
