// Test-side oracles, deliberately independent of the library's own
// spectral routines: Eigen's solvers provide the reference answers.
#ifndef PSDLAT_TESTS_ORACLES_HPP
#define PSDLAT_TESTS_ORACLES_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "psdlat/psd_core.hpp"

namespace oracles {

using psdlat::Matrix;
using psdlat::RealVector;

/// Reference eigenvalues of a Hermitian matrix (ascending).
inline RealVector reference_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Null space of an arbitrary matrix through a rank-revealing LU, orthonormalized
/// by Householder QR.  Shares no code path with the library's spectral kernels.
inline Matrix lu_null_space(const Matrix& m, double rel_tol = 1e-9) {
  if (m.cwiseAbs().maxCoeff() < 1e-12) // zero matrix: kernel is everything
    return Matrix::Identity(m.cols(), m.cols());
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(rel_tol);
  if (lu.dimensionOfKernel() == 0) return Matrix(m.cols(), 0);
  Matrix k = lu.kernel();
  Eigen::HouseholderQR<Matrix> qr(k);
  Matrix q = qr.householderQ() * Matrix::Identity(m.cols(), k.cols());
  return q;
}

inline double herm_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  const RealVector v = es.eigenvalues();
  return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

} // namespace oracles

#endif
