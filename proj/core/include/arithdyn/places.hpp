#ifndef ARITHDYN_PLACES_HPP
#define ARITHDYN_PLACES_HPP

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn {

// A place of Q: the archimedean absolute value or the p-adic one, |p|_p = p^{-1}.
// local_degree is N_v = [Q_v : Q_v] = 1; kept as a slot so number-field
// extensions would not change any interface.
class Place {
 public:
  static Place archimedean() { return Place(true, 0); }
  static Place finite(Int p) { return Place(false, std::move(p)); }

  bool is_archimedean() const { return arch_; }
  bool is_finite() const { return !arch_; }
  const Int& prime() const { return p_; }
  int local_degree() const { return 1; }

  // log p for finite places, used when turning exact exponents into numerics.
  double log_p() const { return arch_ ? 0.0 : log_abs(p_); }

  std::string str() const { return arch_ ? std::string("oo") : p_.get_str(); }

  friend bool operator==(const Place& a, const Place& b) {
    return a.arch_ == b.arch_ && (a.arch_ || a.p_ == b.p_);
  }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.arch_ != b.arch_) return a.arch_;  // archimedean place sorts first
    if (a.arch_) return false;
    return a.p_ < b.p_;
  }

 private:
  Place(bool arch, Int p) : arch_(arch), p_(std::move(p)) {}
  bool arch_;
  Int p_;
};

// One local logarithmic contribution log|x|_v.  Finite places are exact
// rational multiples of log p; only the archimedean entry is numeric.
struct LocalLog {
  Place place;
  Rat exact;       // coefficient of log p (finite places), 0 otherwise
  double numeric;  // archimedean value, 0 at finite places
  double err;      // nonnegative; 0 at finite places

  double value() const {
    return place.is_archimedean() ? numeric : to_double(exact) * place.log_p();
  }
};

// log|x|_v for nonzero rational x.  Throws ZeroInput on x = 0.
LocalLog abs_log(const Rat& x, const Place& v);

// Sum of log|x|_v over the archimedean place and every prime dividing the
// numerator or denominator.  The finite parts cancel the archimedean one by
// the product formula; what is returned is the floating-point residue.
double product_formula_defect(const Rat& x);

using PlaceSet = std::set<Place>;

}  // namespace arithdyn

#endif
