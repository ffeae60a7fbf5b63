#include "pobs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pobs {

Matrix cholesky(const Matrix& S) {
  const Eigen::Index n = S.rows();
  if (n != S.cols()) throw NumericalError("cholesky", "matrix is not square");
  const double scale = n ? S.diagonal().cwiseAbs().maxCoeff() : 0.0;
  Matrix L = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = S(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (!(d > 1e-13 * scale)) throw NumericalError("cholesky", "degenerate estimation basis");
    L(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = S(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= L(i, k) * L(j, k);
      L(i, j) = v / L(j, j);
    }
  }
  return L;
}

namespace {

// Solves L x = b in place.
void forward(const Matrix& L, Vector& x) {
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    double v = x[i];
    for (Eigen::Index k = 0; k < i; ++k) v -= L(i, k) * x[k];
    x[i] = v / L(i, i);
  }
}

// Solves L^T x = b in place.
void backward(const Matrix& L, Vector& x) {
  for (Eigen::Index i = L.rows() - 1; i >= 0; --i) {
    double v = x[i];
    for (Eigen::Index k = i + 1; k < L.rows(); ++k) v -= L(k, i) * x[k];
    x[i] = v / L(i, i);
  }
}

}  // namespace

Vector cholesky_solve(const Matrix& L, const Vector& b) {
  Vector x = b;
  forward(L, x);
  backward(L, x);
  return x;
}

SymmetricEigen jacobi_eigen(const Matrix& input, double tol, int max_sweeps) {
  const Eigen::Index n = input.rows();
  Matrix A = 0.5 * (input + input.transpose());
  Matrix V = Matrix::Identity(n, n);
  const double fro = A.norm();
  auto off = [&] {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * A(i, j) * A(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off() > tol * fro) {
    if (sweep == max_sweeps)
      throw NumericalError("jacobi", "no convergence after " + std::to_string(max_sweeps) +
                                         " sweeps");
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing A(p,q): tan(2 theta) = 2 apq / (aqq - app).
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        A(p, q) = A(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return A(a, a) < A(b, b); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  out.sweeps = sweep;
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values[j] = A(order[j], order[j]);
    out.vectors.col(j) = V.col(order[j]);
  }
  return out;
}

SymmetricEigen generalized_sym_eig(const Matrix& G, const Matrix& S) {
  if (G.rows() != S.rows() || G.cols() != S.cols() || G.rows() != G.cols())
    throw NumericalError("eigen", "G and S must be square and of equal size");
  const Eigen::Index n = G.rows();
  const Matrix L = cholesky(S);

  // C = L^{-1} G L^{-T}
  Matrix C(n, n);
  Matrix tmp(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector col = G.col(j);
    forward(L, col);
    tmp.col(j) = col;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector row = tmp.row(i).transpose();
    forward(L, row);
    C.row(i) = row.transpose();
  }

  SymmetricEigen eig = jacobi_eigen(C);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector xi = eig.vectors.col(j);
    backward(L, xi);
    const double snorm = std::sqrt(xi.dot(S * xi));
    xi /= snorm;
    Eigen::Index imax = 0;
    xi.cwiseAbs().maxCoeff(&imax);
    if (xi[imax] < 0) xi = -xi;
    eig.vectors.col(j) = xi;
  }
  return eig;
}

}  // namespace pobs
