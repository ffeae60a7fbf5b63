#include "pobs/models/lgl.hpp"

#include <cmath>
#include <numbers>

namespace pobs::models {

double legendre(int n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

LglRule lgl_nodes(int Np) {
  if (Np < 1) throw ConfigError("lgl: order must be >= 1");
  const int n = Np;
  LglRule rule;
  rule.nodes.resize(n + 1);
  rule.weights.resize(n + 1);

  // Newton on (1 - x^2) P_n'(x) via x_new = x - (x P_n - P_{n-1}) / ((n + 1) P_n),
  // started from Chebyshev-Gauss-Lobatto points.
  for (int j = 0; j <= n; ++j) {
    double x = -std::cos(std::numbers::pi * j / n);
    if (j == 0 || j == n) {
      rule.nodes[j] = x;
      continue;
    }
    int it = 0;
    for (;; ++it) {
      if (it == 100) throw NumericalError("lgl", "Newton iteration did not converge");
      const double pn = legendre(n, x);
      const double pm = legendre(n - 1, x);
      const double step = (x * pn - pm) / ((n + 1) * pn);
      x -= step;
      if (std::abs(step) < 1e-14) break;
    }
    rule.nodes[j] = x;
  }
  // Symmetrize to remove round-off asymmetry.
  for (int j = 0; j <= n / 2; ++j) {
    const double a = 0.5 * (rule.nodes[n - j] - rule.nodes[j]);
    rule.nodes[j] = -a;
    rule.nodes[n - j] = a;
  }
  if (n % 2 == 0) rule.nodes[n / 2] = 0.0;

  std::vector<double> pn(n + 1);
  for (int j = 0; j <= n; ++j) {
    pn[j] = legendre(n, rule.nodes[j]);
    rule.weights[j] = 2.0 / (n * (n + 1.0) * pn[j] * pn[j]);
  }

  rule.D = Matrix::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      if (i != j) rule.D(i, j) = pn[i] / (pn[j] * (rule.nodes[i] - rule.nodes[j]));
  // Diagonal from the zero row-sum identity (exact on constants).
  for (int i = 0; i <= n; ++i) rule.D(i, i) = -rule.D.row(i).sum();
  return rule;
}

}  // namespace pobs::models
