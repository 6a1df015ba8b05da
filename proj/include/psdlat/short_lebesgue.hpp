#ifndef PSDLAT_SHORT_LEBESGUE_HPP
#define PSDLAT_SHORT_LEBESGUE_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "psdlat/parallel_ops.hpp"
#include "psdlat/psd_core.hpp"

namespace psdlat {

/// The auxiliary Hilbert space of a positive operator B, realized in
/// coordinates.  H_B is the completion of ran B under <Bx, By>_B = <Bx, y>;
/// in finite dimension it is C^r with the standard inner product, reached
/// through the embedding J = V_r diag(sqrt(lambda_i)) built from the
/// significant spectrum.  J is injective with dense (= full) range of J*,
/// and J J* = B.
class AuxSpace {
public:
  explicit AuxSpace(const PsdMatrix& b, const Tolerances& tol = {})
      : source_(b), tol_(tol) {
    const Eigen::Index r = b.effective_rank();
    vr_ = b.range_basis();
    root_ = b.range_eigenvalues().cwiseSqrt();
    j_ = vr_ * root_.asDiagonal();
    (void)r;
  }

  Eigen::Index rank() const { return j_.cols(); }
  Eigen::Index ambient_dim() const { return source_.dim(); }
  const PsdMatrix& source() const { return source_; }
  const Matrix& j() const { return j_; }
  Matrix jstar() const { return j_.adjoint(); }

  /// J X J* for an operator X on H_B.
  Matrix expand(const Matrix& x) const { return j_ * x * j_.adjoint(); }

  /// The unique solution Q of J Q J* = X for X with ran X inside ran B,
  /// through the full-column-rank left inverse J^+ = diag(1/sqrt(lambda)) V_r*.
  Matrix compress(const Matrix& x) const {
    const Matrix jplus = root_.cwiseInverse().asDiagonal() * vr_.adjoint();
    Matrix q = jplus * x * jplus.adjoint();
    return Complex(0.5, 0.0) * (q + q.adjoint()).eval();
  }

private:
  PsdMatrix source_;
  Tolerances tol_;
  Matrix vr_;
  RealVector root_;
  Matrix j_;
};

inline AuxSpace build_aux_space(const PsdMatrix& b, const Tolerances& tol = {}) {
  return AuxSpace(b, tol);
}

/// The multivalued part M of the closed relation {(Ax, Bx) : x} between H_A
/// and H_B.  In finite dimension the graph is closed, so M is simply
/// J_B*(ker A) expressed in H_B coordinates.
inline Subspace multivalued_part(const PsdMatrix& a, const PsdMatrix& b,
                                 const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "multivalued_part");
  const AuxSpace aux(b, tol);
  const Matrix ker = a.kernel_basis();
  if (aux.rank() == 0 || ker.cols() == 0) return Subspace::zero(aux.rank());
  const Matrix image = aux.jstar() * ker;
  return Subspace(aux.rank(), detail::orthonormal_columns(image, tol.rank), tol);
}

/// Generalized short through the auxiliary-space factorization:
/// [A]B = J_B (I - P_M) J_B*.
inline PsdMatrix short_aux(const PsdMatrix& a, const PsdMatrix& b,
                           const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "short_aux");
  const AuxSpace aux(b, tol);
  const Eigen::Index r = aux.rank();
  if (r == 0) return PsdMatrix::zero(b.dim(), tol);
  const Subspace m = multivalued_part(a, b, tol);
  Matrix s = aux.expand(Matrix::Identity(r, r) - m.projector());
  s = Complex(0.5, 0.0) * (s + s.adjoint()).eval();
  return PsdMatrix(s, tol);
}

/// Generalized short through the Schur complement: in a basis adapted to
/// ran A + ker A, compress B onto ran A.  Equal to [A]B in finite dimension,
/// where absolute continuity reduces to range inclusion; kept as an
/// algorithmically independent cross-check of the other two routes.
inline PsdMatrix short_schur(const PsdMatrix& a, const PsdMatrix& b,
                             const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "short_schur");
  const Eigen::Index n = a.dim();
  const Eigen::Index r = a.effective_rank();
  if (r == 0) return PsdMatrix::zero(n, tol);
  if (r == n) return b;
  Matrix u(n, n);
  u.leftCols(r) = a.range_basis();
  u.rightCols(n - r) = a.kernel_basis();
  Matrix bt = u.adjoint() * b.matrix() * u;
  bt = Complex(0.5, 0.0) * (bt + bt.adjoint()).eval();
  const Matrix b11 = bt.topLeftCorner(r, r);
  const Matrix b12 = bt.topRightCorner(r, n - r);
  const Matrix b22 = bt.bottomRightCorner(n - r, n - r);
  const Matrix b22_pinv = pseudo_inverse(PsdMatrix(b22, tol), tol).matrix();
  Matrix shorted = Matrix::Zero(n, n);
  shorted.topLeftCorner(r, r) = b11 - b12 * b22_pinv * b12.adjoint();
  Matrix s = u * shorted * u.adjoint();
  s = Complex(0.5, 0.0) * (s + s.adjoint()).eval();
  return PsdMatrix(s, tol);
}

/// One run of the monotone doubling schedule B : (2^k A).
struct ShortSchedule {
  std::vector<PsdMatrix> iterates; ///< one per weight, in schedule order
  std::vector<double> weights;     ///< 1, 2, 4, ...
  bool converged = false;
  double last_gap = 0.0;
};

/// Generalized short as the supremum of B : (nA): iterate the doubling
/// schedule n = 2^k until successive iterates settle.  The sequence is
/// monotone nondecreasing in the Loewner order; the gap to the limit decays
/// like O(1/n), so doubling reaches the stop threshold in ~log2(1/tol)
/// steps.
inline ShortSchedule short_iterative_schedule(const PsdMatrix& a, const PsdMatrix& b,
                                              const Tolerances& tol = {},
                                              int k_max = 60) {
  detail::require_same_dim(a.dim(), b.dim(), "short_iterative");
  ShortSchedule sched;
  PsdMatrix prev = parallel_sum_scaled(b, a, 1.0, tol);
  sched.iterates.push_back(prev);
  sched.weights.push_back(1.0);
  const double stop = tol.conv * (1.0 + b.norm());
  for (int k = 1; k <= k_max; ++k) {
    const double weight = std::ldexp(1.0, k); // 2^k exactly
    PsdMatrix cur = parallel_sum_scaled(b, a, weight, tol);
    sched.last_gap = detail::spectral_norm_hermitian(cur.matrix() - prev.matrix());
    sched.iterates.push_back(cur);
    sched.weights.push_back(weight);
    prev = std::move(cur);
    if (sched.last_gap < stop) {
      sched.converged = true;
      break;
    }
  }
  return sched;
}

inline PsdMatrix short_iterative(const PsdMatrix& a, const PsdMatrix& b,
                                 const Tolerances& tol = {}, int k_max = 60) {
  ShortSchedule sched = short_iterative_schedule(a, b, tol, k_max);
  if (!sched.converged) {
    std::ostringstream os;
    os << "short_iterative: doubling schedule did not settle; last gap "
       << sched.last_gap << " after " << sched.weights.size() << " steps";
    throw NoConvergence(os.str());
  }
  return sched.iterates.back();
}

/// The generalized short [A]B: the largest positive operator below B that is
/// absolutely continuous with respect to A.  Computed by the auxiliary-space
/// projection formula and cross-checked against the Schur-complement and
/// iterative routes; disagreement beyond tolerance is an error, never
/// silently resolved.
inline PsdMatrix generalized_short(const PsdMatrix& a, const PsdMatrix& b,
                                   const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "generalized_short");
  const PsdMatrix via_aux = short_aux(a, b, tol);
  const PsdMatrix via_schur = short_schur(a, b, tol);
  const PsdMatrix via_iter = short_iterative(a, b, tol);
  const double scale = 1.0 + b.norm();
  struct Pair {
    const char* name;
    double gap;
    double budget;
  };
  const Pair pairs[] = {
      {"aux vs schur",
       detail::spectral_norm_hermitian(via_aux.matrix() - via_schur.matrix()),
       tol.conv * scale},
      {"aux vs iterative",
       detail::spectral_norm_hermitian(via_aux.matrix() - via_iter.matrix()),
       10.0 * tol.conv * scale},
      {"schur vs iterative",
       detail::spectral_norm_hermitian(via_schur.matrix() - via_iter.matrix()),
       10.0 * tol.conv * scale},
  };
  for (const Pair& p : pairs) {
    if (p.gap > p.budget) {
      std::ostringstream os;
      os << "generalized_short: " << p.name << " disagree, gap " << p.gap
         << " exceeds " << p.budget;
      throw CrossCheckFailure(os.str());
    }
  }
  return via_aux;
}

/// Absolute continuity B << A, decided by the fixed-point test [A]B = B and,
/// concurrently, by its finite-dimensional reduction ran B inside ran A.
/// The two must agree.
inline bool is_absolutely_continuous(const PsdMatrix& b, const PsdMatrix& a,
                                     const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "is_absolutely_continuous");
  const PsdMatrix shorted = generalized_short(a, b, tol);
  const bool fixed_point = detail::spectral_norm_hermitian(
                               shorted.matrix() - b.matrix()) <= tol.conv * (1.0 + b.norm());
  const Matrix ub = b.range_basis();
  double defect = 0.0;
  if (ub.cols() > 0) {
    const Matrix pa = a.range_basis() * a.range_basis().adjoint();
    defect = detail::spectral_norm(ub - pa * ub);
  }
  const bool range_included = defect <= tol.conv;
  if (fixed_point != range_included) {
    std::ostringstream os;
    os << "is_absolutely_continuous: fixed-point test says " << fixed_point
       << " but range inclusion says " << range_included << " (defect " << defect
       << ")";
    throw CrossCheckFailure(os.str());
  }
  return fixed_point;
}

/// Singularity A and B: the only positive operator below both is zero.
/// Decided by A : B = 0 and, concurrently, by triviality of the intersection
/// of the ranges; the two must agree.
inline bool is_singular(const PsdMatrix& a, const PsdMatrix& b,
                        const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "is_singular");
  const double ps_norm = parallel_sum(a, b, tol).norm();
  const bool by_parallel_sum = ps_norm <= tol.conv * (1.0 + a.norm() + b.norm());
  const bool by_ranges =
      subspace_intersection(range_subspace(a, tol), range_subspace(b, tol), tol).dim() ==
      0;
  if (by_parallel_sum != by_ranges) {
    std::ostringstream os;
    os << "is_singular: parallel-sum test says " << by_parallel_sum
       << " but range intersection says " << by_ranges << " (||A:B|| = " << ps_norm
       << ")";
    throw CrossCheckFailure(os.str());
  }
  return by_parallel_sum;
}

/// B split into an A-absolutely continuous part and an A-singular part.
///
/// In finite dimension the regular part always satisfies [A]B <= alpha*A for
/// some finite alpha (absolute continuity collapses to range inclusion), so
/// `unique` is true on every input this library can represent; it is kept as
/// a field because the decomposition is reported, not assumed.
struct LebesgueDecomposition {
  PsdMatrix regular;
  PsdMatrix singular_part;
  bool unique = true;
  std::optional<double> alpha_min; ///< least alpha with regular <= alpha*A
};

inline LebesgueDecomposition lebesgue_decompose(const PsdMatrix& a, const PsdMatrix& b,
                                                const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "lebesgue_decompose");
  const PsdMatrix regular = generalized_short(a, b, tol);
  const PsdMatrix singular(Matrix(b.matrix() - regular.matrix()), tol);

  if (!is_absolutely_continuous(regular, a, tol))
    throw CrossCheckFailure("lebesgue_decompose: regular part failed the "
                            "absolute-continuity predicate");
  if (!is_singular(a, singular, tol))
    throw CrossCheckFailure("lebesgue_decompose: singular part failed the "
                            "singularity predicate");

  LebesgueDecomposition out{regular, singular, true, std::nullopt};

  const Matrix ur = regular.range_basis();
  double defect = 0.0;
  if (ur.cols() > 0) {
    const Matrix pa = a.range_basis() * a.range_basis().adjoint();
    defect = detail::spectral_norm(ur - pa * ur);
  }
  out.unique = defect <= tol.conv;
  if (out.unique) {
    const Eigen::Index ra = a.effective_rank();
    if (ra == 0) {
      out.alpha_min = 0.0;
    } else {
      // largest generalized eigenvalue of (regular, A) on ran A
      const Matrix ua = a.range_basis();
      const RealVector lam = a.range_eigenvalues();
      const Matrix scaled = lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                            (ua.adjoint() * regular.matrix() * ua) *
                            lam.cwiseSqrt().cwiseInverse().asDiagonal();
      const EigenSystem es = detail::jacobi_hermitian(scaled);
      out.alpha_min = std::max(0.0, es.values(ra - 1));
    }
  }
  return out;
}

} // namespace psdlat

#endif
