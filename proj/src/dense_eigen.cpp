#include "tdem/dense_eigen.hpp"

#include <complex>
#include <string>
#include <vector>

#include <lapacke.h>

#include "tdem/errors.hpp"

namespace tdem {

namespace {

// dgeev packs a conjugate pair (j, j+1) as re = V(:,j), im = V(:,j+1).
Eigen::MatrixXcd unpack(const Eigen::MatrixXd& V, const std::vector<double>& wi) {
  const Eigen::Index n = V.rows();
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (wi[static_cast<std::size_t>(j)] == 0.0) {
      out.col(j) = V.col(j).cast<std::complex<double>>();
    } else if (wi[static_cast<std::size_t>(j)] > 0.0 && j + 1 < n) {
      for (Eigen::Index i = 0; i < n; ++i) {
        out(i, j) = {V(i, j), V(i, j + 1)};
        out(i, j + 1) = {V(i, j), -V(i, j + 1)};
      }
      ++j;
    }
  }
  return out;
}

} // namespace

NonsymmetricEigen eigen_nonsymmetric(const Eigen::MatrixXd& A, bool want_left) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigen_nonsymmetric: matrix not square");
  const lapack_int n = static_cast<lapack_int>(A.rows());
  Eigen::MatrixXd work = A;
  std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
  Eigen::MatrixXd VR(n, n);
  Eigen::MatrixXd VL(want_left ? n : 1, want_left ? n : 1);
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n, work.data(), n, wr.data(),
                    wi.data(), VL.data(), want_left ? n : 1, VR.data(), n);
  if (info != 0)
    throw NumericError("dgeev failed (info=" + std::to_string(info) + ") on a " +
                       std::to_string(n) + "x" + std::to_string(n) + " matrix");
  NonsymmetricEigen out;
  out.values.resize(n);
  for (lapack_int i = 0; i < n; ++i) out.values[i] = {wr[static_cast<std::size_t>(i)], wi[static_cast<std::size_t>(i)]};
  out.right = unpack(VR, wi);
  if (want_left) out.left = unpack(VL, wi);
  return out;
}

SymmetricEigen eigen_symmetric(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigen_symmetric: matrix not square");
  const lapack_int n = static_cast<lapack_int>(A.rows());
  SymmetricEigen out;
  out.vectors = A;
  out.values.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.vectors.data(), n, out.values.data());
  if (info != 0) throw NumericError("dsyevd failed (info=" + std::to_string(info) + ")");
  return out;
}

void solve_dense_inplace(Eigen::MatrixXd& A, Eigen::MatrixXd& B, double rcond_floor) {
  if (A.rows() != A.cols() || B.rows() != A.rows())
    throw std::invalid_argument("solve_dense_inplace: dimension mismatch");
  const lapack_int n = static_cast<lapack_int>(A.rows());
  const double anorm = LAPACKE_dlange(LAPACK_COL_MAJOR, '1', n, n, A.data(), n);
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, A.data(), n, ipiv.data());
  if (info > 0)
    throw NumericError("singular collocation system: zero pivot at row " + std::to_string(info));
  if (info < 0) throw NumericError("dgetrf argument error " + std::to_string(info));
  double rcond = 0.0;
  LAPACKE_dgecon(LAPACK_COL_MAJOR, '1', n, A.data(), n, anorm, &rcond);
  if (rcond < rcond_floor)
    throw NumericError("ill-conditioned collocation system: reciprocal condition estimate " +
                       std::to_string(rcond));
  info = LAPACKE_dgetrs(LAPACK_COL_MAJOR, 'N', n, static_cast<lapack_int>(B.cols()), A.data(), n,
                        ipiv.data(), B.data(), n);
  if (info != 0) throw NumericError("dgetrs failed (info=" + std::to_string(info) + ")");
}

} // namespace tdem
