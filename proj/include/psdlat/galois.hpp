#ifndef PSDLAT_GALOIS_HPP
#define PSDLAT_GALOIS_HPP

#include <sstream>

#include "psdlat/forms.hpp"

namespace psdlat {

/// The antitone Galois connection attached to a fixed reference form w:
/// alpha(t) = t : w maps all forms into the image cone {t : w}, and
/// beta(s) = s / w maps back.  Both reverse the order once the domain is
/// read with the opposite order; the inequalities below are always spelled
/// with explicit directions rather than through an order-reversing wrapper
/// type, to keep the signs auditable.
struct PolarityPair {
  Form reference;
  Tolerances tol{};
};

/// alpha(t) = t : w.
inline Form alpha(const Form& t, const PolarityPair& ctx) {
  return form_parallel_sum(t, ctx.reference, ctx.tol);
}

/// beta(s) = s / w.  Throws NotInImage when s is not of the shape t : w,
/// which is decided operationally: the parallel difference must exist.
inline Form beta(const Form& s, const PolarityPair& ctx) {
  const ParallelDiffResult r = parallel_diff(s.gram(), ctx.reference.gram(), ctx.tol);
  if (!r.solvable()) {
    std::ostringstream os;
    os << "beta: s lies outside the image of alpha (" << r.detail << ")";
    throw NotInImage(os.str());
  }
  return Form(*r.value);
}

/// The closure operator beta(alpha(t)) = (t : w) / w, which equals the
/// largest w-almost dominated part D_w t; the two computations are
/// cross-checked against each other.
inline Form closure(const Form& t, const PolarityPair& ctx) {
  const Form via_galois = beta(alpha(t, ctx), ctx);
  const Form via_short = form_short(ctx.reference, t, ctx.tol);
  const double gap = detail::spectral_norm_hermitian(via_galois.gram().matrix() -
                                                     via_short.gram().matrix());
  if (gap > ctx.tol.conv * (1.0 + t.gram().norm())) {
    std::ostringstream os;
    os << "closure: (t:w)/w and the generalized short disagree with gap " << gap;
    throw CrossCheckFailure(os.str());
  }
  return via_galois;
}

/// Both sides of the adjunction  v <= alpha(u)  iff  beta(v) <= u.
struct AdjunctionCheck {
  bool lhs = false; ///< v <= alpha(u)
  bool rhs = false; ///< beta(v) <= u (the opposite-order reading of u below beta(v))
  bool holds() const { return lhs == rhs; }
};

/// Evaluate the adjunction biconditional for u arbitrary and v in the image
/// cone of alpha.  Membership of v is a precondition, not a result: a v
/// outside the image raises NotInImage.
inline AdjunctionCheck check_adjunction(const Form& u, const Form& v,
                                        const PolarityPair& ctx) {
  detail::require_same_dim(u.space_dim(), v.space_dim(), "check_adjunction");
  const Form bv = beta(v, ctx); // throws NotInImage when v is not alpha(something)
  AdjunctionCheck out;
  out.lhs = loewner_leq(v.gram(), alpha(u, ctx).gram(), ctx.tol);
  out.rhs = loewner_leq(bv.gram(), u.gram(), ctx.tol);
  return out;
}

/// A form is closed for the closure operator iff it equals its own closure,
/// iff it is w-almost dominated; the finite-dimensional reduction of the
/// latter is range inclusion of the Gram matrices, checked concurrently.
inline bool is_closed_element(const Form& t, const PolarityPair& ctx) {
  const Form c = closure(t, ctx);
  const bool fixed_point =
      detail::spectral_norm_hermitian(c.gram().matrix() - t.gram().matrix()) <=
      ctx.tol.conv * (1.0 + t.gram().norm());

  const Matrix ut = t.gram().range_basis();
  double defect = 0.0;
  if (ut.cols() > 0) {
    const Matrix pw =
        ctx.reference.gram().range_basis() * ctx.reference.gram().range_basis().adjoint();
    defect = detail::spectral_norm(ut - pw * ut);
  }
  const bool range_included = defect <= ctx.tol.conv;
  if (fixed_point != range_included) {
    std::ostringstream os;
    os << "is_closed_element: closure fixed-point test says " << fixed_point
       << " but range inclusion says " << range_included << " (defect " << defect
       << ")";
    throw CrossCheckFailure(os.str());
  }
  return fixed_point;
}

} // namespace psdlat

#endif
