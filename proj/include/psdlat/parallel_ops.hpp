#ifndef PSDLAT_PARALLEL_OPS_HPP
#define PSDLAT_PARALLEL_OPS_HPP

#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "psdlat/psd_core.hpp"

namespace psdlat {

/// Parallel sum A : B, the operator whose quadratic form at x is
/// inf_y { <A(x-y), x-y> + <By, y> }.
///
/// Computed by the closed form A (A+B)^+ B, symmetrized before validation.
/// The closed form is an O(n^3) finite-dimensional shortcut; the variational
/// definition itself is available as variational_parallel_sum_value and the
/// two are cross-checked in the test suites.
inline PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b,
                              const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "parallel_sum");
  const PsdMatrix sum(Matrix(a.matrix() + b.matrix()), tol);
  const Matrix pinv = pseudo_inverse(sum, tol).matrix();
  Matrix c = a.matrix() * pinv * b.matrix();
  c = Complex(0.5, 0.0) * (c + c.adjoint()).eval();
  return PsdMatrix(c, tol);
}

/// Parallel sum B : (w * A) for a possibly enormous weight w (up to ~2^60),
/// evaluated in a basis adapted to ran A so that no rounding of w*A ever
/// contaminates the directions where only B acts.  The small eigenvalue
/// cluster of the graded matrix  w*A + B  is what carries the singular part
/// of B; it is kept down to a noise floor proportional to ||B||, not to the
/// (w-scaled) top of the spectrum.  Used by the monotone short schedules and
/// the quasi-unit scaling identities.
inline PsdMatrix parallel_sum_scaled(const PsdMatrix& b, const PsdMatrix& a,
                                     double weight, const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "parallel_sum_scaled");
  const Eigen::Index n = a.dim();
  const Eigen::Index r = a.effective_rank();
  if (r == 0 || b.effective_rank() == 0 || weight <= 0.0)
    return PsdMatrix::zero(n, tol);

  Matrix u(n, n);
  u.leftCols(r) = a.range_basis();
  u.rightCols(n - r) = a.kernel_basis();
  const RealVector lam = a.range_eigenvalues();

  Matrix b_adapted = u.adjoint() * b.matrix() * u;
  b_adapted = Complex(0.5, 0.0) * (b_adapted + b_adapted.adjoint()).eval();
  Matrix graded = b_adapted;
  Matrix weighted_a = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < r; ++i) {
    graded(i, i) += weight * lam(i);
    weighted_a(i, i) = weight * lam(i);
  }

  const EigenSystem es = detail::jacobi_hermitian(graded);
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 64.0 * static_cast<double>(n) * eps * (1.0 + b.norm());
  Matrix pinv = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (es.values(i) > floor)
      pinv += (1.0 / es.values(i)) * (es.vectors.col(i) * es.vectors.col(i).adjoint());

  Matrix c = b_adapted * pinv * weighted_a;
  c = u * c * u.adjoint();
  c = Complex(0.5, 0.0) * (c + c.adjoint()).eval();
  return PsdMatrix(c, tol);
}

/// The defining infimum of the parallel sum, evaluated by conjugate-gradient
/// descent on the convex quadratic f(y) = <A(x-y), x-y> + <By, y>.  This is
/// the independent oracle for the closed form: it never touches the
/// pseudoinverse path.
inline double variational_parallel_sum_value(const PsdMatrix& a, const PsdMatrix& b,
                                             const Vector& x,
                                             const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "variational_parallel_sum_value");
  detail::require_same_dim(a.dim(), x.size(), "variational_parallel_sum_value");
  const Eigen::Index n = a.dim();
  const Matrix h = a.matrix() + b.matrix();
  const Vector rhs = a.matrix() * x;

  const auto objective = [&](const Vector& y) {
    const Vector d = x - y;
    return (d.adjoint() * a.matrix() * d)(0, 0).real() +
           (y.adjoint() * b.matrix() * y)(0, 0).real();
  };

  Vector y = Vector::Zero(n);
  double f = objective(y);
  Vector res = rhs;
  Vector p = res;
  double rr = res.squaredNorm();
  const double rr_floor =
      std::numeric_limits<double>::epsilon() * (1.0 + rhs.squaredNorm());
  const Eigen::Index cap = 10 * n * n;
  for (Eigen::Index it = 0; it < cap; ++it) {
    if (rr <= rr_floor) break;
    const Vector hp = h * p;
    const double php = (p.adjoint() * hp)(0, 0).real();
    if (php <= rr_floor) break;
    const double alpha = rr / php;
    y += alpha * p;
    const double f_new = objective(y);
    const bool settled = std::abs(f_new - f) <= (tol.conv / 10.0) * (1.0 + std::abs(f_new));
    f = f_new;
    if (settled) break;
    res -= alpha * hp;
    const double rr_new = res.squaredNorm();
    p = res + (rr_new / rr) * p;
    rr = rr_new;
  }
  return f;
}

/// Outcome of a parallel subtraction.  When the defining supremum diverges,
/// the obstruction and a direction realizing the divergence are reported
/// instead of a value.
struct ParallelDiffResult {
  enum class Obstruction { none, not_dominated, range_escape };

  std::optional<PsdMatrix> value;
  Obstruction obstruction = Obstruction::none;
  Vector divergence_direction; // unit vector; empty when solvable
  std::string detail;

  bool solvable() const { return value.has_value(); }
};

/// Parallel difference S / T: the minimal solution X of X : T = S when one
/// exists, defined by  (S / T)[x] = sup_y { S[x+y] - T[y] }.
///
/// The supremum definition is a statement about quadratic forms; applying it
/// to operators relies on the order isomorphism between positive matrices
/// and the forms they induce on C^n (every form here is <Gx, x> for exactly
/// one PSD G), not on an operator-level definition of its own.
///
/// The two solvability conditions are a finite-dimensional reduction of the
/// supremum formula (they are not part of the variational definition
/// itself): the quadratic part of y -> S[x+y] - T[y] must be negative
/// semidefinite, i.e. T - S PSD, and the linear part must vanish on its
/// kernel, i.e. ran S contained in ran(T - S).  The maximizing argument then
/// gives the closed form S + S (T-S)^+ S.
inline ParallelDiffResult parallel_diff(const PsdMatrix& s, const PsdMatrix& t,
                                        const Tolerances& tol = {}) {
  detail::require_same_dim(s.dim(), t.dim(), "parallel_diff");
  ParallelDiffResult out;
  const Matrix d_raw = t.matrix() - s.matrix();
  const EigenSystem es = detail::jacobi_hermitian(d_raw);
  const Eigen::Index n = s.dim();
  const double lam_max = n == 0 ? 0.0 : es.values(n - 1);
  if (n > 0 && es.values(0) < -tol.psd * (1.0 + std::max(lam_max, 0.0))) {
    out.obstruction = ParallelDiffResult::Obstruction::not_dominated;
    out.divergence_direction = es.vectors.col(0);
    std::ostringstream os;
    os << "T - S has negative eigenvalue " << es.values(0)
       << "; the supremum grows quadratically along the reported direction";
    out.detail = os.str();
    return out;
  }
  const PsdMatrix d(d_raw, tol);
  const Matrix us = s.range_basis();
  if (us.cols() > 0) {
    const Matrix escape =
        us - d.range_basis() * (d.range_basis().adjoint() * us);
    const double defect = detail::spectral_norm(escape);
    if (defect > tol.conv) {
      out.obstruction = ParallelDiffResult::Obstruction::range_escape;
      // dominant escaping direction, normalized
      const EigenSystem ges = detail::jacobi_hermitian(Matrix(escape.adjoint() * escape));
      const Vector dir = escape * ges.vectors.col(ges.values.size() - 1);
      out.divergence_direction = dir / dir.norm();
      std::ostringstream os;
      os << "ran S escapes ran(T - S) with defect " << defect
         << "; the supremum grows linearly along the reported direction";
      out.detail = os.str();
      return out;
    }
  }
  Matrix r = s.matrix() + s.matrix() * pseudo_inverse(d, tol).matrix() * s.matrix();
  r = Complex(0.5, 0.0) * (r + r.adjoint()).eval();
  PsdMatrix result(r, tol);
  const double residual = detail::spectral_norm_hermitian(
      parallel_sum(result, t, tol).matrix() - s.matrix());
  if (residual > tol.conv * (1.0 + s.norm())) {
    std::ostringstream os;
    os << "parallel_diff: solution check (S/T) : T = S failed with residual "
       << residual;
    throw CrossCheckFailure(os.str());
  }
  out.value = std::move(result);
  return out;
}

/// Scalar identity (lambda t) : (mu t) = (lambda mu / (lambda + mu)) t.
inline bool scalar_parallel_check(const PsdMatrix& t, double lambda, double mu,
                                  const Tolerances& tol = {}) {
  if (!(lambda > 0.0) || !(mu > 0.0))
    throw Error("scalar_parallel_check: weights must be positive");
  const PsdMatrix lt(Matrix(lambda * t.matrix()), tol);
  const PsdMatrix mt(Matrix(mu * t.matrix()), tol);
  const Matrix expected = (lambda * mu / (lambda + mu)) * t.matrix();
  const double gap = detail::spectral_norm_hermitian(
      parallel_sum(lt, mt, tol).matrix() - expected);
  return gap <= tol.conv * (1.0 + detail::spectral_norm_hermitian(expected));
}

} // namespace psdlat

#endif
