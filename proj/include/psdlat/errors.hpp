#ifndef PSDLAT_ERRORS_HPP
#define PSDLAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psdlat {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define PSDLAT_DEFINE_ERROR(Name)                                             \
  class Name : public Error {                                                 \
  public:                                                                     \
    using Error::Error;                                                       \
  }

PSDLAT_DEFINE_ERROR(NonHermitianInput);
PSDLAT_DEFINE_ERROR(NotPositiveSemidefinite);
PSDLAT_DEFINE_ERROR(DimensionMismatch);
PSDLAT_DEFINE_ERROR(NoConvergence);
PSDLAT_DEFINE_ERROR(CrossCheckFailure);
PSDLAT_DEFINE_ERROR(NotInInterval);
PSDLAT_DEFINE_ERROR(NotAProjection);
PSDLAT_DEFINE_ERROR(NotQuasiUnit);
PSDLAT_DEFINE_ERROR(HalfLemmaViolated);
PSDLAT_DEFINE_ERROR(IdentityDrift);
PSDLAT_DEFINE_ERROR(NotInImage);
PSDLAT_DEFINE_ERROR(NotDominated);
PSDLAT_DEFINE_ERROR(UnknownSuite);
PSDLAT_DEFINE_ERROR(BadRank);
PSDLAT_DEFINE_ERROR(ParseError);
PSDLAT_DEFINE_ERROR(InvalidTolerance);

#undef PSDLAT_DEFINE_ERROR

} // namespace psdlat

#endif
