#ifndef ARITHDYN_POLY_HPP
#define ARITHDYN_POLY_HPP

#include <complex>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithdyn/rational.hpp"

namespace arithdyn {

// Dense univariate polynomial over Q, coefficients lowest degree first.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
  static Poly constant(const Rat& a) { return Poly({a}); }
  static Poly x() { return Poly({Rat(0), Rat(1)}); }
  // c * x^n
  static Poly monomial(const Rat& c, size_t n);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rat& operator[](size_t i) const;
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat lead() const;
  size_t term_count() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  Poly operator/(const Rat& s) const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }

  Rat eval(const Rat& x) const;
  std::complex<double> eval(const std::complex<double>& z) const;
  // Exact evaluation at a complex rational point; returns (re, im).
  std::pair<Rat, Rat> eval_exact(const Rat& re, const Rat& im) const;

  Poly derivative() const;
  Poly compose(const Poly& inner) const;   // this(inner(x))
  Poly pow(unsigned e) const;
  Poly iterate_compose(unsigned n) const;  // n-fold self-composition

  // Euclidean division over Q; o must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& o) const;
  bool divides(const Poly& o) const;  // this | o

  // Largest n with x^n | this (0 for nonzero constant; 0 for the zero poly).
  size_t x_multiplicity() const;
  Poly shift_down(size_t n) const;  // divide by x^n (exact)

  // Content (gcd of numerators / lcm of denominators) and primitive integer part.
  Rat content() const;
  Poly primitive() const;  // this / content, integer coefficients, positive lead
  std::vector<Int> int_coeffs() const;  // requires integer coefficients

  double max_abs_coeff_log() const;  // log max |c_i|, -inf if zero

  std::string str(const std::string& var = "x") const;

  void trim();

 private:
  std::vector<Rat> c_;
};

Poly operator*(const Rat& s, const Poly& p);

// Monic gcd over Q (primitive-PRS based internally).
Poly poly_gcd(const Poly& a, const Poly& b);

// Resultant of a and b over Q.
Rat resultant(const Poly& a, const Poly& b);

Rat discriminant(const Poly& a);

// a / gcd(a, a'), primitive-normalized sign.
Poly squarefree_part(const Poly& a);

// Resultant of the degree-d homogenizations of a and b (both viewed as forms
// of degree d >= max(deg a, deg b)).
Rat form_resultant(const Poly& a, const Poly& b, int d);

}  // namespace arithdyn

#endif
