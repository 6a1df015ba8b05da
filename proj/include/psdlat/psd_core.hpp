#ifndef PSDLAT_PSD_CORE_HPP
#define PSDLAT_PSD_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "psdlat/errors.hpp"
#include "psdlat/jacobi.hpp"
#include "psdlat/tolerances.hpp"

namespace psdlat {

namespace detail {

inline double max_abs_entry(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Spectral norm of a Hermitian matrix (largest absolute eigenvalue).
inline double spectral_norm_hermitian(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  const EigenSystem es = jacobi_hermitian(m);
  return std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
}

/// Spectral norm of an arbitrary matrix via the Gram spectrum.
inline double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const EigenSystem es = jacobi_hermitian(Matrix(m.adjoint() * m));
  const double top = es.values(es.values.size() - 1);
  return top <= 0.0 ? 0.0 : std::sqrt(top);
}

/// Orthonormal basis of the column space of m, with rank decided by the same
/// relative eigenvalue threshold used everywhere else (applied to the Gram
/// matrix).  Two passes: the second pass repairs the loss of orthogonality
/// that a single Gram factorization leaves behind for ill-conditioned input.
inline Matrix orthonormal_columns(const Matrix& m, double rank_tol) {
  const Eigen::Index n = m.rows();
  if (m.cols() == 0) return Matrix(n, 0);
  Matrix basis = m;
  for (int pass = 0; pass < 2; ++pass) {
    const EigenSystem es = jacobi_hermitian(Matrix(basis.adjoint() * basis));
    const Eigen::Index k = es.values.size();
    const double top = k == 0 ? 0.0 : es.values(k - 1);
    const double thr = rank_tol * std::max(1.0, top);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < k; ++i)
      if (es.values(i) > thr) ++r;
    if (r == 0) return Matrix(n, 0);
    Matrix next(n, r);
    for (Eigen::Index j = 0; j < r; ++j) {
      const Eigen::Index src = k - r + j; // significant eigenvalues sit at the end
      next.col(j) = basis * es.vectors.col(src) / std::sqrt(es.values(src));
    }
    basis = std::move(next);
  }
  return basis;
}

inline void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(std::string(who) + ": matrix is not square");
}

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* who) {
  if (a != b) {
    std::ostringstream os;
    os << who << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionMismatch(os.str());
  }
}

} // namespace detail

/// A square complex matrix whose symmetry defect, relative to the largest
/// absolute entry, is below tol_sym.  The stored entries are the exact
/// Hermitian part of the input, so downstream spectral code never sees
/// asymmetric rounding noise.
class HermitianMatrix {
public:
  explicit HermitianMatrix(const Matrix& raw, const Tolerances& tol = {}) {
    detail::require_square(raw, "HermitianMatrix");
    const double scale = detail::max_abs_entry(raw);
    const double defect = detail::max_abs_entry(raw - raw.adjoint());
    if (defect > tol.sym * scale) {
      std::ostringstream os;
      os << "HermitianMatrix: symmetry defect " << defect << " exceeds "
         << tol.sym * scale;
      throw NonHermitianInput(os.str());
    }
    entries_ = Complex(0.5, 0.0) * (raw + raw.adjoint()).eval();
    for (Eigen::Index i = 0; i < entries_.rows(); ++i)
      entries_(i, i) = Complex(entries_(i, i).real(), 0.0);
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

private:
  Matrix entries_;
};

/// Eigendecomposition of a validated Hermitian matrix.  Eigenvalues ascend;
/// eigenvector columns are orthonormal; the result is deterministic for a
/// fixed input.
inline EigenSystem hermitian_eigen(const HermitianMatrix& m) {
  return detail::jacobi_hermitian(m.entries());
}

/// Convenience overload validating raw entries first.
inline EigenSystem hermitian_eigen(const Matrix& raw, const Tolerances& tol = {}) {
  return hermitian_eigen(HermitianMatrix(raw, tol));
}

/// A positive semidefinite matrix with its spectral decomposition attached.
///
/// Validation happens once, at construction: eigenvalues in
/// [-tol_psd*(1+lambda_max), 0) are clipped to zero, anything more negative
/// is rejected rather than repaired.  The effective rank counts eigenvalues
/// above tol_rank*max(1, lambda_max); every range/kernel decision in the
/// library goes through this one threshold.
class PsdMatrix {
public:
  explicit PsdMatrix(const Matrix& raw, const Tolerances& tol = {})
      : PsdMatrix(HermitianMatrix(raw, tol), tol) {}

  explicit PsdMatrix(const HermitianMatrix& herm, const Tolerances& tol = {})
      : entries_(herm.entries()) {
    EigenSystem es = detail::jacobi_hermitian(entries_);
    const Eigen::Index n = entries_.rows();
    const double lam_max = n == 0 ? 0.0 : es.values(n - 1);
    const double floor = -tol.psd * (1.0 + std::max(lam_max, 0.0));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (es.values(i) < floor) {
        std::ostringstream os;
        os << "PsdMatrix: eigenvalue " << es.values(i)
           << " below admissible floor " << floor;
        throw NotPositiveSemidefinite(os.str());
      }
      if (es.values(i) < 0.0) es.values(i) = 0.0;
    }
    eigenvalues_ = std::move(es.values);
    eigenvectors_ = std::move(es.vectors);
    const double thr = tol.rank * std::max(1.0, lam_max);
    rank_ = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (eigenvalues_(i) > thr) ++rank_;
  }

  static PsdMatrix zero(Eigen::Index n, const Tolerances& tol = {}) {
    return PsdMatrix(Matrix(Matrix::Zero(n, n)), tol);
  }
  static PsdMatrix identity(Eigen::Index n, const Tolerances& tol = {}) {
    return PsdMatrix(Matrix(Matrix::Identity(n, n)), tol);
  }

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  Eigen::Index effective_rank() const { return rank_; }

  /// Largest eigenvalue; the spectral norm of a PSD matrix.
  double norm() const {
    return dim() == 0 ? 0.0 : eigenvalues_(eigenvalues_.size() - 1);
  }

  /// Eigenvector columns spanning the (numerical) range, ascending order.
  Matrix range_basis() const { return eigenvectors_.rightCols(rank_); }
  /// Eigenvector columns spanning the (numerical) kernel.
  Matrix kernel_basis() const { return eigenvectors_.leftCols(dim() - rank_); }
  /// Significant eigenvalues, matching range_basis() column for column.
  RealVector range_eigenvalues() const { return eigenvalues_.tail(rank_); }

  double quadratic_form(const Vector& x) const {
    return (x.adjoint() * entries_ * x)(0, 0).real();
  }

private:
  Matrix entries_;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
  Eigen::Index rank_ = 0;
};

/// Moore-Penrose pseudoinverse over the significant spectrum.
inline PsdMatrix pseudo_inverse(const PsdMatrix& a, const Tolerances& tol = {}) {
  const Eigen::Index r = a.effective_rank();
  const Matrix v = a.range_basis();
  const RealVector lam = a.range_eigenvalues();
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  for (Eigen::Index i = 0; i < r; ++i)
    out += (1.0 / lam(i)) * (v.col(i) * v.col(i).adjoint());
  out = Complex(0.5, 0.0) * (out + out.adjoint()).eval();
  return PsdMatrix(out, tol);
}

/// Positive square root over the significant spectrum.  Restricting to the
/// effective rank keeps range decisions consistent: the square root would
/// otherwise lift sub-threshold eigenvalue dirt above the rank threshold.
inline PsdMatrix sqrt_psd(const PsdMatrix& a, const Tolerances& tol = {}) {
  const Eigen::Index n = a.dim();
  const Matrix v = a.range_basis();
  const RealVector lam = a.range_eigenvalues();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < v.cols(); ++i)
    out += std::sqrt(lam(i)) * (v.col(i) * v.col(i).adjoint());
  out = Complex(0.5, 0.0) * (out + out.adjoint()).eval();
  return PsdMatrix(out, tol);
}

/// Loewner order: A <= B iff B - A is positive semidefinite, within a slack
/// proportional to the operand norms.
inline bool loewner_leq(const PsdMatrix& a, const PsdMatrix& b,
                        const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "loewner_leq");
  if (a.dim() == 0) return true;
  const EigenSystem es = detail::jacobi_hermitian(b.matrix() - a.matrix());
  const double lam_min = es.values(0);
  return lam_min >= -tol.order * (1.0 + a.norm() + b.norm());
}

/// Orthogonal projection onto the range of a.
inline PsdMatrix range_projection(const PsdMatrix& a, const Tolerances& tol = {}) {
  const Matrix v = a.range_basis();
  Matrix p = v * v.adjoint();
  p = Complex(0.5, 0.0) * (p + p.adjoint()).eval();
  return PsdMatrix(p, tol);
}

/// A linear subspace of C^n held as an orthonormal basis (possibly empty).
class Subspace {
public:
  Subspace(Eigen::Index ambient_dim, Matrix basis, const Tolerances& tol = {})
      : ambient_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.rows() != ambient_ && basis_.cols() != 0)
      throw DimensionMismatch("Subspace: basis rows do not match ambient dimension");
    if (basis_.cols() > 0) {
      const Matrix gram = basis_.adjoint() * basis_;
      const double defect =
          detail::max_abs_entry(gram - Matrix::Identity(basis_.cols(), basis_.cols()));
      if (defect > tol.sym * std::max(1.0, detail::max_abs_entry(gram)))
        throw Error("Subspace: basis columns are not orthonormal");
    } else if (basis_.rows() != ambient_) {
      basis_.resize(ambient_, 0);
    }
  }

  static Subspace zero(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, Matrix(ambient_dim, 0));
  }
  static Subspace full(Eigen::Index ambient_dim) {
    return Subspace(ambient_dim, Matrix(Matrix::Identity(ambient_dim, ambient_dim)));
  }

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  Matrix projector() const {
    if (dim() == 0) return Matrix::Zero(ambient_, ambient_);
    return basis_ * basis_.adjoint();
  }

private:
  Eigen::Index ambient_;
  Matrix basis_;
};

inline Subspace range_subspace(const PsdMatrix& a, const Tolerances& tol = {}) {
  return Subspace(a.dim(), a.range_basis(), tol);
}

inline Subspace kernel_subspace(const PsdMatrix& a, const Tolerances& tol = {}) {
  return Subspace(a.dim(), a.kernel_basis(), tol);
}

/// Intersection of two subspaces from principal angles: the directions whose
/// cosine is within tol_rank of 1.
inline Subspace subspace_intersection(const Subspace& s, const Subspace& t,
                                      const Tolerances& tol = {}) {
  detail::require_same_dim(s.ambient_dim(), t.ambient_dim(), "subspace_intersection");
  const Eigen::Index n = s.ambient_dim();
  if (s.dim() == 0 || t.dim() == 0) return Subspace::zero(n);
  const Matrix cross = s.basis().adjoint() * t.basis(); // p x q, singular values = cosines
  // cosines^2 are the eigenvalues of cross^H cross
  const EigenSystem es = detail::jacobi_hermitian(Matrix(cross.adjoint() * cross));
  const double cos2_floor = (1.0 - tol.rank) * (1.0 - tol.rank);
  Eigen::Index m = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) >= cos2_floor) ++m;
  if (m == 0) return Subspace::zero(n);
  Matrix inter(n, m);
  for (Eigen::Index j = 0; j < m; ++j)
    inter.col(j) = t.basis() * es.vectors.col(es.values.size() - m + j);
  return Subspace(n, detail::orthonormal_columns(inter, tol.rank), tol);
}

} // namespace psdlat

#endif
