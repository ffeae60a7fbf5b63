#pragma once

#include "pobs/types.hpp"

namespace pobs {

/// Lower-triangular L with S = L L^T. Throws NumericalError("cholesky", ...) when a
/// pivot is not positive relative to the largest diagonal entry.
Matrix cholesky(const Matrix& S);

/// Solves (L L^T) x = b.
Vector cholesky_solve(const Matrix& L, const Vector& b);

struct SymmetricEigen {
  Vector values;   ///< ascending
  Matrix vectors;  ///< columns
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
/// tol * ||A||_F.
SymmetricEigen jacobi_eigen(const Matrix& A, double tol = 1e-13, int max_sweeps = 60);

/// G xi = sigma S xi with xi^T S xi = 1, sigma ascending.
SymmetricEigen generalized_sym_eig(const Matrix& G, const Matrix& S);

}  // namespace pobs
