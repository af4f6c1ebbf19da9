#ifndef ARITHDYN_HEIGHTS_HPP
#define ARITHDYN_HEIGHTS_HPP

#include <map>
#include <vector>

#include "arithdyn/places.hpp"
#include "arithdyn/poly.hpp"
#include "arithdyn/roots.hpp"

namespace arithdyn {

// A logarithmic height split into an exact non-archimedean part
// (prime -> rational exponent of log p) and a numeric archimedean part
// with explicit error bounds.
struct HeightValue {
  double arch = 0.0;
  double arch_err = 0.0;
  std::map<Int, Rat> finite;  // prime -> e_p, contribution e_p * log p
  double trunc_err = 0.0;
  bool exact_zero = false;  // set when the value is exactly 0 by certificate

  double total() const;
  double error() const { return arch_err + trunc_err; }

  void add_finite(const Int& p, const Rat& e);
  HeightValue& operator+=(const HeightValue& o);
  HeightValue operator*(const Rat& s) const;

  static HeightValue zero() {
    HeightValue h;
    h.exact_zero = true;
    return h;
  }
};

// An algebraic number: an irreducible primitive minimal polynomial together
// with a root index into the canonical (re, im)-sorted root list.
struct AlgebraicNumber {
  Poly minpoly;
  int root_index = 0;  // which root after canonical ordering; -1 = whole orbit

  int degree() const { return minpoly.degree(); }
  static AlgebraicNumber from_rational(const Rat& x);
};

// Standard Weil height of a rational number: sum_v log+ |x|_v.
HeightValue weil_height(const Rat& x);

// Affine Weil height of a rational tuple: sum_v log+ max_i |x_i|_v.
HeightValue weil_height_affine(const std::vector<Rat>& xs);

// Height of an algebraic number via the Mahler-measure identity
//   h(a) = (1/deg)(log|lead| + sum_roots log+ |root|),
// finite part exact from the leading coefficient, archimedean part from
// certified complex roots.  Throws ReducibleMinimalPolynomial.
HeightValue height_algebraic(const AlgebraicNumber& a);

}  // namespace arithdyn

#endif
