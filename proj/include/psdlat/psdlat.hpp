#ifndef PSDLAT_PSDLAT_HPP
#define PSDLAT_PSDLAT_HPP

#include "psdlat/errors.hpp"
#include "psdlat/forms.hpp"
#include "psdlat/galois.hpp"
#include "psdlat/matrix_io.hpp"
#include "psdlat/parallel_ops.hpp"
#include "psdlat/psd_core.hpp"
#include "psdlat/quasi_unit.hpp"
#include "psdlat/random_gen.hpp"
#include "psdlat/short_lebesgue.hpp"
#include "psdlat/suites.hpp"
#include "psdlat/tolerances.hpp"

#endif
