#ifndef PSDLAT_QUASI_UNIT_HPP
#define PSDLAT_QUASI_UNIT_HPP

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psdlat/short_lebesgue.hpp"

namespace psdlat {

/// Evidence bundle for the four equivalent descriptions of a quasi-unit
/// A in the interval [0, B]:
///   (i)   A = [A]B                       -> fixed_point_gap
///   (ii)  A = J_B Q J_B* for a projection Q -> projection_defect, with Q kept
///   (iii) A extreme in [0, B]            -> certified through (ii); a convex
///                                           decomposition search is not a
///                                           finite procedure
///   (iv)  A and B - A singular           -> singularity_gap
/// plus the scaling identity A : B = A/2  -> half_lemma_gap.
///
/// The verdict is the unanimous outcome; a split between the tests is a
/// numerical inconsistency and raises CrossCheckFailure instead of guessing.
struct QuasiUnitCertificate {
  bool verdict = false;

  double fixed_point_gap = 0.0;
  double fixed_point_tol = 0.0;

  std::optional<Matrix> recovered_projection; ///< Q on H_B, r x r
  double projection_defect = 0.0;
  double projection_tol = 0.0;

  double singularity_gap = 0.0;
  double singularity_tol = 0.0;

  double half_lemma_gap = 0.0;
  double half_lemma_tol = 0.0;

  std::string report() const {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3);
    os << "quasi-unit certificate: "
       << (verdict ? "quasi-unit" : "not a quasi-unit") << "\n";
    const auto line = [&os](const char* label, double gap, double tol_used) {
      os << "  " << std::left << std::setw(36) << label << " = " << gap
         << "  (tol " << tol_used << ")  "
         << (gap <= tol_used ? "ok" : "violated") << "\n";
    };
    line("fixed-point gap      ||A - [A]B||", fixed_point_gap, fixed_point_tol);
    line("projection defect    ||Q - Q^2||", projection_defect, projection_tol);
    line("singularity gap      ||A : (B-A)||", singularity_gap, singularity_tol);
    line("half-lemma gap       ||A:B - A/2||", half_lemma_gap, half_lemma_tol);
    return os.str();
  }
};

/// Decide whether A is a quasi-unit of B by running all four equivalent
/// tests and demanding unanimity.
inline QuasiUnitCertificate is_quasi_unit(const PsdMatrix& a, const PsdMatrix& b,
                                          const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "is_quasi_unit");
  if (!loewner_leq(a, b, tol))
    throw NotInInterval("is_quasi_unit: A does not lie below B");

  QuasiUnitCertificate cert;

  // (i) fixed point of the generalized short
  const PsdMatrix shorted = generalized_short(a, b, tol);
  cert.fixed_point_gap = detail::spectral_norm_hermitian(a.matrix() - shorted.matrix());
  cert.fixed_point_tol = tol.conv * (1.0 + b.norm());
  const bool v_fixed = cert.fixed_point_gap <= cert.fixed_point_tol;

  // (ii) recover the positive contraction Q with A = J_B Q J_B* and measure
  // how far it is from being a projection.  The recovery divides by the
  // significant spectrum of B, so the budget carries B's conditioning.
  const AuxSpace aux(b, tol);
  bool v_proj;
  if (aux.rank() == 0) {
    cert.recovered_projection = Matrix(0, 0);
    cert.projection_defect = 0.0;
    cert.projection_tol = tol.conv;
    v_proj = true; // A <= B = 0 forces A = 0 = J 0 J*
  } else {
    const Matrix q = aux.compress(a.matrix());
    cert.recovered_projection = q;
    cert.projection_defect = detail::spectral_norm_hermitian(q - q * q);
    const RealVector lam = b.range_eigenvalues();
    const double cond = lam(lam.size() - 1) / lam(0);
    cert.projection_tol = tol.conv * (1.0 + cond);
    v_proj = cert.projection_defect <= cert.projection_tol;
  }

  // (iv) A and B - A singular.  The difference may sit slightly below zero
  // within the order slack of the precondition, which is wider than the PSD
  // validation floor; widen the floor accordingly.
  Tolerances diff_tol = tol;
  diff_tol.psd = std::max(tol.psd, 2.0 * tol.order);
  const PsdMatrix rest(Matrix(b.matrix() - a.matrix()), diff_tol);
  cert.singularity_gap = parallel_sum(a, rest, tol).norm();
  cert.singularity_tol = tol.conv * (1.0 + a.norm() + rest.norm());
  const bool v_sing = is_singular(a, rest, tol);

  // scaling identity A : B = A/2
  cert.half_lemma_gap = detail::spectral_norm_hermitian(
      parallel_sum(a, b, tol).matrix() - 0.5 * a.matrix());
  cert.half_lemma_tol = tol.conv * (1.0 + a.norm());
  const bool v_half = cert.half_lemma_gap <= cert.half_lemma_tol;

  if (v_fixed != v_proj || v_fixed != v_sing || v_fixed != v_half) {
    std::ostringstream os;
    os << "is_quasi_unit: the equivalent characterizations split "
       << "(fixed-point " << v_fixed << ", projection " << v_proj << ", singularity "
       << v_sing << ", half-lemma " << v_half << ")\n"
       << cert.report();
    throw CrossCheckFailure(os.str());
  }
  cert.verdict = v_fixed;
  return cert;
}

/// The order isomorphism P -> J_B P J_B* from projections on H_B onto the
/// quasi-units of B.
inline PsdMatrix projection_to_quasiunit(const Matrix& p, const PsdMatrix& b,
                                         const Tolerances& tol = {}) {
  const AuxSpace aux(b, tol);
  if (p.rows() != aux.rank() || p.cols() != aux.rank())
    throw DimensionMismatch("projection_to_quasiunit: P does not act on H_B");
  if (p.size() > 0) {
    const double sym_defect = detail::max_abs_entry(p - p.adjoint());
    const double idem_defect = detail::spectral_norm(p - p * p);
    if (sym_defect > tol.sym * std::max(1.0, detail::max_abs_entry(p)) ||
        idem_defect > tol.conv)
      throw NotAProjection("projection_to_quasiunit: P fails P = P* = P^2");
  }
  Matrix a = aux.expand(p);
  a = Complex(0.5, 0.0) * (a + a.adjoint()).eval();
  return PsdMatrix(a, tol);
}

/// Inverse direction of the bijection: the projection on H_B representing a
/// quasi-unit A of B.
inline Matrix quasiunit_to_projection(const PsdMatrix& a, const PsdMatrix& b,
                                      const Tolerances& tol = {}) {
  const QuasiUnitCertificate cert = is_quasi_unit(a, b, tol);
  if (!cert.verdict)
    throw NotQuasiUnit("quasiunit_to_projection: A is not a quasi-unit of B");
  return *cert.recovered_projection;
}

/// Outcome of the infimum test for a pair of positive operators.
struct InfimumResult {
  enum class Witness { none, first_below_second, second_below_first, both };

  bool exists = false;
  std::optional<PsdMatrix> value; ///< min{[A]B, [B]A} when it exists
  Witness witness = Witness::none;
};

/// The greatest lower bound of A and B exists in the positive cone iff the
/// two generalized shorts [A]B and [B]A are comparable, and then equals the
/// smaller of the two.  Near-ties count as existence with witness `both`.
inline InfimumResult infimum(const PsdMatrix& a, const PsdMatrix& b,
                             const Tolerances& tol = {}) {
  detail::require_same_dim(a.dim(), b.dim(), "infimum");
  const PsdMatrix sab = generalized_short(a, b, tol); // [A]B
  const PsdMatrix sba = generalized_short(b, a, tol); // [B]A
  const bool ab_below = loewner_leq(sab, sba, tol);
  const bool ba_below = loewner_leq(sba, sab, tol);
  InfimumResult out;
  if (!ab_below && !ba_below) return out;
  out.exists = true;
  out.witness = ab_below && ba_below ? InfimumResult::Witness::both
               : ab_below            ? InfimumResult::Witness::first_below_second
                                     : InfimumResult::Witness::second_below_first;
  out.value = ab_below ? sab : sba;
  if (!loewner_leq(*out.value, a, tol) || !loewner_leq(*out.value, b, tol))
    throw CrossCheckFailure("infimum: candidate value is not a common lower bound");
  return out;
}

/// Greatest lower bound of two quasi-units of B inside the quasi-unit
/// lattice: 2 (S : T).
inline PsdMatrix quasi_meet(const PsdMatrix& s, const PsdMatrix& t, const PsdMatrix& b,
                            const Tolerances& tol = {}) {
  if (!is_quasi_unit(s, b, tol).verdict || !is_quasi_unit(t, b, tol).verdict)
    throw NotQuasiUnit("quasi_meet: both operands must be quasi-units of B");
  const PsdMatrix ps = parallel_sum(s, t, tol);
  return PsdMatrix(Matrix(2.0 * ps.matrix()), tol);
}

/// Least upper bound of two quasi-units of B: the short of B to ran(S + T).
inline PsdMatrix quasi_join(const PsdMatrix& s, const PsdMatrix& t, const PsdMatrix& b,
                            const Tolerances& tol = {}) {
  if (!is_quasi_unit(s, b, tol).verdict || !is_quasi_unit(t, b, tol).verdict)
    throw NotQuasiUnit("quasi_join: both operands must be quasi-units of B");
  const PsdMatrix sum(Matrix(s.matrix() + t.matrix()), tol);
  return generalized_short(sum, b, tol);
}

/// One step of the quadratic weight recursion lambda <- lambda (lambda + 2).
struct LambdaStep {
  double lambda;
  double gap; ///< || (lambda T) : W - lambda/(1+lambda) T ||
};

/// Verify the scaling identities behind the half-lemma: starting from
/// T : W = T/2, the recursion lambda_1 = 1, lambda_{k+1} = lambda_k
/// (lambda_k + 2) forces (lambda_k T) : W = lambda_k/(1+lambda_k) T at every
/// step.  The sequence 1, 3, 15, 255, ... is doubly exponential, so the
/// 1e15 overflow cap is reached after a handful of steps.
inline std::vector<LambdaStep> lambda_iteration_check(const PsdMatrix& t,
                                                      const PsdMatrix& w, int k_max,
                                                      const Tolerances& tol = {}) {
  detail::require_same_dim(t.dim(), w.dim(), "lambda_iteration_check");
  const double budget = tol.conv * (1.0 + t.norm());
  const double half_gap = detail::spectral_norm_hermitian(
      parallel_sum(t, w, tol).matrix() - 0.5 * t.matrix());
  if (half_gap > budget) {
    std::ostringstream os;
    os << "lambda_iteration_check: T : W = T/2 fails with gap " << half_gap;
    throw HalfLemmaViolated(os.str());
  }
  std::vector<LambdaStep> steps;
  double lambda = 1.0;
  for (int k = 1; k <= k_max && lambda <= 1e15; ++k) {
    const PsdMatrix scaled = parallel_sum_scaled(w, t, lambda, tol);
    const double gap = detail::spectral_norm_hermitian(
        scaled.matrix() - (lambda / (1.0 + lambda)) * t.matrix());
    if (gap > budget) {
      std::ostringstream os;
      os << "lambda_iteration_check: identity drifts at lambda = " << lambda
         << " with gap " << gap;
      throw IdentityDrift(os.str());
    }
    steps.push_back({lambda, gap});
    lambda = lambda * (lambda + 2.0);
  }
  return steps;
}

} // namespace psdlat

#endif
