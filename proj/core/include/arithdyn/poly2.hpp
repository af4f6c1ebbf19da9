#ifndef ARITHDYN_POLY2_HPP
#define ARITHDYN_POLY2_HPP

#include <string>
#include <utility>
#include <vector>

#include "arithdyn/poly.hpp"

namespace arithdyn {

// Element of Q[x][y]: coefficients of y^k are univariate polynomials in x.
class Poly2 {
 public:
  Poly2() = default;
  explicit Poly2(std::vector<Poly> ycoeffs) : c_(std::move(ycoeffs)) { trim(); }
  static Poly2 from_x(const Poly& p) { return Poly2({p}); }
  static Poly2 y() { return Poly2({Poly(), Poly::constant(Rat(1))}); }
  static Poly2 constant(const Rat& a) { return Poly2({Poly::constant(a)}); }

  int deg_y() const { return static_cast<int>(c_.size()) - 1; }
  int deg_x() const;
  int total_degree() const;
  bool is_zero() const { return c_.empty(); }
  const Poly& coeff_y(size_t k) const;
  const std::vector<Poly>& ycoeffs() const { return c_; }

  Poly2 operator-() const;
  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 operator*(const Rat& s) const;
  bool operator==(const Poly2& o) const { return c_ == o.c_; }

  Rat eval(const Rat& x, const Rat& y) const;
  Poly eval_y(const Rat& y) const;        // substitute y, get poly in x
  Poly eval_x(const Rat& x) const;        // substitute x, get poly in y
  Poly2 subst(const Poly2& xs, const Poly2& ys) const;  // this(xs, ys)
  Poly2 pow(unsigned e) const;

  double max_abs_coeff_log() const;
  size_t term_count() const;
  std::vector<Rat> all_coeffs() const;

  std::string str(const std::string& xv = "x", const std::string& yv = "y") const;

  void trim();

 private:
  std::vector<Poly> c_;
};

// Resultant with respect to y of two elements of Q[x][y] (poly in x).
Poly resultant_y(const Poly2& a, const Poly2& b);

// Swap the roles of x and y.
Poly2 swap_vars(const Poly2& a);

}  // namespace arithdyn

#endif
