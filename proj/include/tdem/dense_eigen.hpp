#pragma once

#include <Eigen/Core>

namespace tdem {

/// Full spectrum of a dense real nonsymmetric matrix, with right and left
/// eigenvectors (LAPACK dgeev). Left vectors satisfy w^H A = lambda w^H.
struct NonsymmetricEigen {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd right;
  Eigen::MatrixXcd left;
};

NonsymmetricEigen eigen_nonsymmetric(const Eigen::MatrixXd& A, bool want_left = true);

/// Full spectrum of a dense symmetric matrix, ascending (LAPACK dsyevd).
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

SymmetricEigen eigen_symmetric(const Eigen::MatrixXd& A);

/// Solves A X = B by LU with partial pivoting (LAPACK dgesv). A is destroyed,
/// B is overwritten with X. Throws NumericError on an exactly singular pivot and
/// reports a reciprocal condition estimate when it is below rcond_floor.
void solve_dense_inplace(Eigen::MatrixXd& A, Eigen::MatrixXd& B, double rcond_floor = 1e-13);

} // namespace tdem
