#ifndef ARITHDYN_P1DYN_HPP
#define ARITHDYN_P1DYN_HPP

#include <optional>
#include <vector>

#include "arithdyn/heights.hpp"
#include "arithdyn/places.hpp"
#include "arithdyn/poly.hpp"

namespace arithdyn {

// A point of P^1(Q): a rational number or the point at infinity.
struct P1Point {
  bool infinite = false;
  Rat value;  // meaningful when !infinite

  static P1Point infinity() { return P1Point{true, Rat(0)}; }
  static P1Point of(Rat x) {
    x.canonicalize();
    return P1Point{false, std::move(x)};
  }
  bool operator==(const P1Point& o) const {
    return infinite == o.infinite && (infinite || cmp(value, o.value) == 0);
  }
  bool operator<(const P1Point& o) const {
    if (infinite != o.infinite) return o.infinite;
    if (infinite) return false;
    return cmp(value, o.value) < 0;
  }
  std::string str() const { return infinite ? "oo" : rat_string(value); }
};

// Explicit constant C with |h(f(x)) - d h(x)| <= max(c_plus, c_minus) for
// all x in P^1(Q); stress-checked on 1000 seeded random points at build.
struct HeightBoundC {
  double c_plus = 0.0;
  double c_minus = 0.0;
  double bound() const { return std::max(c_plus, c_minus); }
};

// Rational self-map of P^1 with exact rational coefficients, given as a
// coprime numerator/denominator pair.  Degree d = max(deg num, deg den).
class RationalMapP1 {
 public:
  RationalMapP1(Poly num, Poly den);
  static RationalMapP1 polynomial(Poly p) {
    return RationalMapP1(std::move(p), Poly::constant(Rat(1)));
  }

  int degree() const { return d_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  // Coefficients of the primitive integer homogeneous lift: entry i is the
  // coefficient of a^i b^(d-i).
  const std::vector<Int>& lift_num() const { return ln_; }
  const std::vector<Int>& lift_den() const { return ld_; }
  const Int& lift_resultant() const { return res_; }

  P1Point eval(const P1Point& x) const;
  RationalMapP1 compose(const RationalMapP1& inner) const;  // this(inner(x))
  RationalMapP1 iterate(unsigned n) const;

  bool operator==(const RationalMapP1& o) const { return ln_ == o.ln_ && ld_ == o.ld_; }

  // Bezout cofactor identities of the lift forms:
  //   u1*N + v1*D = c1 * a^(2d-1),  u2*N + v2*D = c2 * b^(2d-1)
  // with integer coefficient forms of degree d-1 and nonzero integers c1, c2.
  struct Cofactors {
    std::vector<Int> u1, v1, u2, v2;
    Int c1, c2;
  };
  const Cofactors& cofactors() const;

  std::string str() const;

 private:
  friend HeightBoundC height_bound(const RationalMapP1& f);
  Poly num_, den_;
  int d_;
  std::vector<Int> ln_, ld_;
  Int res_;
  mutable std::optional<Cofactors> cof_;
  mutable std::optional<HeightBoundC> hbc_;
};

PlaceSet bad_places(const RationalMapP1& f);

HeightBoundC height_bound(const RationalMapP1& f);

struct PreperiodicCertificate {
  bool preperiodic = false;
  long tail = 0;
  long cycle = 0;
};

PreperiodicCertificate is_preperiodic_p1(const RationalMapP1& f, const P1Point& x);
inline PreperiodicCertificate is_preperiodic_p1(const RationalMapP1& f, const Rat& x) {
  return is_preperiodic_p1(f, P1Point::of(x));
}

// Local canonical height lambda_{f,v}(x): the Green value of the primitive
// integer homogeneous lift at (x, 1); exact rational multiple of log p at
// finite places, numeric with certified error at the archimedean one.
LocalLog green_p1(const RationalMapP1& f, const P1Point& x, const Place& v, double tol);

// Canonical height, exact finite parts, archimedean part within tol.
HeightValue canonical_height_p1(const RationalMapP1& f, const P1Point& x, double tol);
inline HeightValue canonical_height_p1(const RationalMapP1& f, const Rat& x, double tol) {
  return canonical_height_p1(f, P1Point::of(x), tol);
}

// Canonical height of an algebraic point: h(f^N(a))/d^N in the quotient ring,
// N chosen so the truncation error is below tol.
HeightValue canonical_height_p1(const RationalMapP1& f, const AlgebraicNumber& a, double tol);

// Split endomorphism of (P^1)^n, component i acting on coordinate perm[i]:
//   F(x_1..x_n)_i = f_i(x_{perm[i]}).
struct SplitEndo {
  std::vector<RationalMapP1> comps;
  std::vector<int> perm;  // empty means identity

  explicit SplitEndo(std::vector<RationalMapP1> c, std::vector<int> p = {});
  size_t arity() const { return comps.size(); }
  bool identity_perm() const;
  std::vector<P1Point> eval(const std::vector<P1Point>& x) const;
  SplitEndo compose(const SplitEndo& inner) const;  // this after inner
  bool operator==(const SplitEndo& o) const;
};

// hat h_F(X) = sum_i hat h_{f_i}(x_i); components get tol / n each.
HeightValue split_height(const SplitEndo& F, const std::vector<P1Point>& X, double tol);

bool is_preperiodic_split(const SplitEndo& F, const std::vector<P1Point>& X);

}  // namespace arithdyn

#endif
