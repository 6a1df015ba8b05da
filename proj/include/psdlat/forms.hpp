#ifndef PSDLAT_FORMS_HPP
#define PSDLAT_FORMS_HPP

#include <optional>
#include <string>
#include <utility>

#include "psdlat/quasi_unit.hpp"
#include "psdlat/short_lebesgue.hpp"

namespace psdlat {

/// A nonnegative sesquilinear form t on C^n, represented by its (possibly
/// singular) Gram matrix: t(x, y) = <Gx, y>.  The kernel of the form is the
/// kernel of G; degenerate kernels are the feature that distinguishes forms
/// from the operators they induce.
class Form {
public:
  explicit Form(PsdMatrix gram, std::string label = "")
      : gram_(std::move(gram)), label_(std::move(label)) {}

  Eigen::Index space_dim() const { return gram_.dim(); }
  const PsdMatrix& gram() const { return gram_; }
  const std::string& label() const { return label_; }

  Complex operator()(const Vector& x, const Vector& y) const {
    return (y.adjoint() * gram_.matrix() * x)(0, 0);
  }
  double quad(const Vector& x) const { return gram_.quadratic_form(x); }

private:
  PsdMatrix gram_;
  std::string label_;
};

/// Coordinates for the quotient pre-Hilbert space X / ker t: the map
/// x -> x + ker t realized as an r x n matrix under which the induced inner
/// product becomes the standard one.  The completion step of the abstract
/// construction is the identity in finite dimension.
struct QuotientSpace {
  Eigen::Index rank = 0;
  Matrix coord_map; ///< r x n; coord_map^H coord_map reproduces the Gram matrix
};

inline Subspace form_kernel(const Form& t, const Tolerances& tol = {}) {
  return kernel_subspace(t.gram(), tol);
}

inline QuotientSpace quotient_space(const Form& t, const Tolerances& tol = {}) {
  const AuxSpace aux(t.gram(), tol);
  return QuotientSpace{aux.rank(), aux.jstar()};
}

namespace detail {

/// Right inverse of the quotient coordinate map: C^+ = V_r diag(1/sqrt(l)).
inline Matrix coord_map_right_inverse(const PsdMatrix& gram) {
  return gram.range_basis() *
         gram.range_eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
}

} // namespace detail

/// The contraction j : H_t -> H_w induced by x + ker t -> x + ker w, valid
/// whenever w <= t (otherwise the map is unbounded or ill defined).
/// Returned as an r_w x r_t matrix in quotient coordinates.
inline Matrix embedding_j(const Form& t, const Form& w, const Tolerances& tol = {}) {
  detail::require_same_dim(t.space_dim(), w.space_dim(), "embedding_j");
  if (!loewner_leq(w.gram(), t.gram(), tol))
    throw NotDominated("embedding_j: w is not dominated by t");
  const Matrix cw = quotient_space(w, tol).coord_map;
  return cw * detail::coord_map_right_inverse(t.gram());
}

/// The order isomorphism of the form interval [0, t] onto the operator
/// interval [0, I] on H_t:  phi_t(w) = j* j for the embedding j above.
/// Equivalently, the Gram matrix of w compressed to quotient coordinates.
inline PsdMatrix phi(const Form& t, const Form& w, const Tolerances& tol = {}) {
  detail::require_same_dim(t.space_dim(), w.space_dim(), "phi");
  if (!loewner_leq(w.gram(), t.gram(), tol))
    throw NotInInterval("phi: w does not lie in [0, t]");
  const AuxSpace aux(t.gram(), tol);
  return PsdMatrix(aux.compress(w.gram().matrix()), tol);
}

/// Inverse of phi: the form w(x, y) = <A (x + ker t), y + ker t> for a
/// positive contraction A on H_t.
inline Form phi_inverse(const Form& t, const PsdMatrix& a, const Tolerances& tol = {}) {
  const AuxSpace aux(t.gram(), tol);
  detail::require_same_dim(a.dim(), aux.rank(), "phi_inverse");
  if (a.dim() > 0 && !loewner_leq(a, PsdMatrix::identity(a.dim(), tol), tol))
    throw NotInInterval("phi_inverse: A does not lie in [0, I]");
  Matrix gram = aux.expand(a.matrix());
  gram = Complex(0.5, 0.0) * (gram + gram.adjoint()).eval();
  return Form(PsdMatrix(gram, tol));
}

/// Parallel sum of forms; the Gram matrices carry the whole computation.
inline Form form_parallel_sum(const Form& t, const Form& w, const Tolerances& tol = {}) {
  detail::require_same_dim(t.space_dim(), w.space_dim(), "form_parallel_sum");
  return Form(parallel_sum(t.gram(), w.gram(), tol));
}

/// The largest w-almost dominated part D_w t of t, i.e. the generalized
/// short of the Gram matrix of t to the range of the Gram matrix of w.
/// t is w-almost dominated exactly when form_short(w, t) returns t itself.
inline Form form_short(const Form& w, const Form& t, const Tolerances& tol = {}) {
  detail::require_same_dim(t.space_dim(), w.space_dim(), "form_short");
  return Form(generalized_short(w.gram(), t.gram(), tol));
}

struct FormInfimumResult {
  bool exists = false;
  std::optional<Form> value;
  InfimumResult::Witness witness = InfimumResult::Witness::none;
};

/// The greatest lower bound of two forms exists iff D_u v and D_v u are
/// comparable; forms on C^n and positive operators share one order, so the
/// operator-level criterion decides the form question verbatim.
inline FormInfimumResult form_inf_exists(const Form& u, const Form& v,
                                         const Tolerances& tol = {}) {
  detail::require_same_dim(u.space_dim(), v.space_dim(), "form_inf_exists");
  const InfimumResult r = infimum(u.gram(), v.gram(), tol);
  FormInfimumResult out;
  out.exists = r.exists;
  out.witness = r.witness;
  if (r.value) out.value = Form(*r.value);
  return out;
}

} // namespace psdlat

#endif
