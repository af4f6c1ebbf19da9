#ifndef ARITHDYN_ROOTS_HPP
#define ARITHDYN_ROOTS_HPP

#include <complex>
#include <vector>

#include "arithdyn/poly.hpp"

namespace arithdyn {

// An isolated complex root: |z - root| <= err, exactly one root in the disk.
struct RootBox {
  std::complex<double> z;
  double err;
};

// All complex roots of a squarefree polynomial, canonically ordered by
// (real part, imaginary part).  Aberth iteration plus an exact-arithmetic
// residual certificate.  Throws RootIsolationFailure if certification fails.
std::vector<RootBox> isolate_roots(const Poly& f, double tol = 1e-12);

}  // namespace arithdyn

#endif
