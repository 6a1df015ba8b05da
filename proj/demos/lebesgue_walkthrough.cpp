// Walkthrough: split a positive matrix along another one, certify that the
// regular part is an extreme point of the interval, and watch the Galois
// closure recover the same object at the form level.
#include <iostream>

#include "psdlat/psdlat.hpp"

using namespace psdlat;

int main() {
  Matrix raw_a(3, 3), raw_b(3, 3);
  raw_a << Complex(1, 0), Complex(0, 0), Complex(0, 0),
           Complex(0, 0), Complex(2, 0), Complex(0, 0),
           Complex(0, 0), Complex(0, 0), Complex(0, 0);
  raw_b << Complex(3, 0), Complex(1, 0), Complex(1, 0),
           Complex(1, 0), Complex(2, 0), Complex(0, 0),
           Complex(1, 0), Complex(0, 0), Complex(1, 0);

  const PsdMatrix a(raw_a);
  const PsdMatrix b(raw_b);

  std::cout << "Lebesgue decomposition of B along A\n";
  const LebesgueDecomposition ld = lebesgue_decompose(a, b);
  std::cout << "  regular part (range inside ran A):\n" << ld.regular.matrix() << "\n";
  std::cout << "  singular part:\n" << ld.singular_part.matrix() << "\n";
  std::cout << "  unique: " << (ld.unique ? "yes" : "no");
  if (ld.alpha_min) std::cout << ", smallest alpha with regular <= alpha*A: " << *ld.alpha_min;
  std::cout << "\n\n";

  std::cout << "the regular part is an extreme point of [0, B]:\n";
  std::cout << is_quasi_unit(ld.regular, b).report() << "\n";

  // the same computation through the Galois connection on forms
  const PolarityPair ctx{Form(a), Tolerances{}};
  const Form closed = closure(Form(b), ctx);
  const double gap = detail::spectral_norm_hermitian(closed.gram().matrix() -
                                                     ld.regular.matrix());
  std::cout << "closure((b : a) / a) equals the regular part, gap " << gap << "\n";
  return gap < 1e-7 ? 0 : 1;
}
