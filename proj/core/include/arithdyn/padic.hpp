#ifndef ARITHDYN_PADIC_HPP
#define ARITHDYN_PADIC_HPP

#include <vector>

#include "arithdyn/poly.hpp"

namespace arithdyn {

// Fixed-precision scaled p-adic number: value = p^ord * unit, where unit is a
// residue known modulo p^known (0 <= unit < p^known, p does not divide unit
// unless the value is zero to precision).  Precision is tracked through
// additive cancellation; operations throw PrecisionExhausted when a value's
// effective precision drops to zero.
class PadicField {
 public:
  PadicField(Int p, int digits);

  // Sentinel valuation for values that are exactly zero (or zero to very
  // high precision); kept far from any real valuation that can occur.
  static constexpr long kZeroOrd = 1L << 40;

  struct Val {
    long ord;    // valuation; for zero values, a lower bound on it
    Int unit;    // unit part, reduced mod p^known
    int known;   // digits of unit that are reliable
    bool zero;   // true when the value is 0 to working precision
  };

  const Int& prime() const { return p_; }
  int digits() const { return digits_; }

  Val from_rat(const Rat& x) const;
  Val zero() const { return Val{kZeroOrd, Int(0), digits_, true}; }

  Val add(const Val& a, const Val& b) const;
  Val sub(const Val& a, const Val& b) const;
  Val mul(const Val& a, const Val& b) const;
  Val neg(const Val& a) const;
  // Multiply by exact rational scalar.
  Val scale(const Val& a, const Rat& s) const;

  // Horner evaluation of a Q-coefficient polynomial.
  Val eval_poly(const Poly& f, const Val& x) const;

  // ord of the value; throws for zero-to-precision values.
  long ord(const Val& a) const;

 private:
  Val make(long ord, Int unit, int known) const;
  Int pow_p(int k) const;

  Int p_;
  int digits_;
  std::vector<Int> ppow_;  // p^0 .. p^digits
};

}  // namespace arithdyn

#endif
