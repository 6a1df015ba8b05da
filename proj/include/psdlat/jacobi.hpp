#ifndef PSDLAT_JACOBI_HPP
#define PSDLAT_JACOBI_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include "psdlat/errors.hpp"

namespace psdlat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// the matching orthonormal eigenvector columns.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

namespace detail {

/// Cyclic-by-rows complex Jacobi diagonalization.
///
/// Jacobi is used instead of a tridiagonalization solver for two reasons.
/// It is deterministic for a fixed input (fixed sweep order, no shifts), so
/// every certificate built on top of it is reproducible bit for bit.  And on
/// graded positive matrices -- which arise here constantly, e.g. B + n*A with
/// n up to 2^60 -- it computes the small eigenvalue cluster to high relative
/// accuracy, where a norm-stable solver only guarantees absolute accuracy
/// eps*||M||.  The rotation threshold |a_pq| <= eps*sqrt(|a_pp*a_qq|) is the
/// scaled criterion that preserves this property.
inline EigenSystem jacobi_hermitian(Matrix work) {
  const Eigen::Index n = work.rows();
  EigenSystem out;
  out.vectors = Matrix::Identity(n, n);
  out.values = RealVector::Zero(n);
  if (n == 0) return out;

  // exact Hermitian part; real diagonal
  work = Complex(0.5, 0.0) * (work + work.adjoint()).eval();
  for (Eigen::Index i = 0; i < n; ++i) work(i, i) = Complex(work(i, i).real(), 0.0);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double stop = 0.5 * eps;
  const int max_sweeps = 64;

  Matrix& a = work;
  Matrix& v = out.vectors;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double zabs = std::abs(a(p, q));
        if (zabs == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (zabs <= stop * std::sqrt(std::abs(app) * std::abs(aqq))) {
          a(p, q) = Complex(0, 0);
          a(q, p) = Complex(0, 0);
          continue;
        }
        rotated = true;
        const Complex phase = a(p, q) / zabs; // e^{i arg a_pq}
        const double tau = (aqq - app) / (2.0 * zabs);
        const double sg = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sg / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G: e_p -> c e_p - s conj(phase) e_q ; e_q -> s e_p + c conj(phase) e_q
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        const Vector colp = a.col(p);
        const Vector colq = a.col(q);
        a.col(p) = c * colp + gqp * colq;
        a.col(q) = s * colp + gqq * colq;
        const Eigen::RowVectorXcd rowp = a.row(p);
        const Eigen::RowVectorXcd rowq = a.row(q);
        a.row(p) = c * rowp + std::conj(gqp) * rowq;
        a.row(q) = s * rowp + std::conj(gqq) * rowq;

        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
        a(p, q) = Complex(0, 0);
        a(q, p) = Complex(0, 0);

        const Vector vp = v.col(p);
        const Vector vq = v.col(q);
        v.col(p) = c * vp + gqp * vq;
        v.col(q) = s * vp + gqq * vq;
      }
    }
    if (!rotated) {
      for (Eigen::Index i = 0; i < n; ++i) out.values(i) = a(i, i).real();

      // ascending order, stable under ties
      std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), Eigen::Index(0));
      std::stable_sort(perm.begin(), perm.end(), [&](Eigen::Index x, Eigen::Index y) {
        return out.values(x) < out.values(y);
      });
      RealVector vals(n);
      Matrix vecs(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        vals(i) = out.values(perm[static_cast<std::size_t>(i)]);
        vecs.col(i) = v.col(perm[static_cast<std::size_t>(i)]);
      }
      // fix each column's phase: the largest-magnitude entry becomes real positive
      for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Index imax = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double m = std::abs(vecs(i, j));
          if (m > best) {
            best = m;
            imax = i;
          }
        }
        if (best > 0.0) {
          const Complex ph = std::conj(vecs(imax, j)) / best;
          vecs.col(j) *= ph;
          vecs(imax, j) = Complex(vecs(imax, j).real(), 0.0);
        }
      }
      out.values = std::move(vals);
      out.vectors = std::move(vecs);
      return out;
    }
  }
  throw NoConvergence("jacobi_hermitian: sweep limit reached");
}

} // namespace detail

} // namespace psdlat

#endif
