#ifndef PSDLAT_TOLERANCES_HPP
#define PSDLAT_TOLERANCES_HPP

#include <cmath>
#include <string>

#include "psdlat/errors.hpp"

namespace psdlat {

/// Numerical policy shared by every approximate predicate in the library.
///
/// All values are dimensionless and relative.  The thresholds widen
/// monotonically down the pipeline: a symmetry check is the tightest, a
/// convergence / cross-check comparison the loosest, because every
/// downstream predicate composes several spectral operations.
struct Tolerances {
  double sym = 1e-12;   ///< Hermitian symmetry defect, relative to max entry.
  double psd = 1e-10;   ///< admissible negative eigenvalue, relative.
  double rank = 1e-9;   ///< spectral truncation threshold, relative.
  double order = 1e-8;  ///< slack of Loewner comparisons.
  double conv = 1e-7;   ///< iterative stops and cross-algorithm agreement.

  void validate() const {
    const double all[] = {sym, psd, rank, order, conv};
    for (double v : all)
      if (!(std::isfinite(v)) || v < 0.0)
        throw InvalidTolerance("tolerances must be finite and nonnegative");
    if (!(conv > rank))
      throw InvalidTolerance(
          "tol_conv must exceed tol_rank (iterative checks are looser "
          "than spectral truncation)");
  }
};

} // namespace psdlat

#endif
