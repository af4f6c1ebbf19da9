#ifndef ARITHDYN_SKEWPROD_HPP
#define ARITHDYN_SKEWPROD_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/henon.hpp"  // A2Point, LocalGreen
#include "arithdyn/p1dyn.hpp"
#include "arithdyn/poly2.hpp"

namespace arithdyn {

// Affine automorphism of A^2: X -> M X + t with exact rational entries.
struct AffineAuto {
  Rat m00 = Rat(1), m01 = Rat(0), m10 = Rat(0), m11 = Rat(1);
  Rat t0 = Rat(0), t1 = Rat(0);

  A2Point apply(const A2Point& p) const;
  AffineAuto inverse() const;
  bool is_identity() const;
};

// Regular polynomial skew product f(x,y) = (p(x), q(x,y)) with
// deg p = deg_total q = d >= 2 and a nonzero constant y^d coefficient.
// When sigma is present the stored (p, q) is the normalized form
// sigma . F . sigma^{-1}; points are transformed accordingly.
class SkewProduct {
 public:
  SkewProduct(Poly p, Poly2 q, std::optional<AffineAuto> sigma = std::nullopt);

  int degree() const { return d_; }
  const Poly& p() const { return p_; }
  const Poly2& q() const { return q_; }
  const std::optional<AffineAuto>& sigma() const { return sigma_; }

  A2Point eval(const A2Point& pt) const;  // in normalized coordinates
  SkewProduct compose(const SkewProduct& inner) const;
  SkewProduct iterate(unsigned n) const;
  bool operator==(const SkewProduct& o) const { return p_ == o.p_ && q_ == o.q_; }

  // Primitive integer homogeneous lift (P(x,z), Q(x,y,z), ell z^d):
  // px[i] multiplies x^i z^(d-i); qc[i][j] multiplies x^i y^j z^(d-i-j).
  const std::vector<Int>& lift_p() const { return px_; }
  const std::vector<std::vector<Int>>& lift_q() const { return qc_; }
  const Int& lift_zscale() const { return ell_; }

  // Exact cofactor identities A p + B q + C (ell z^d) = c * t^E for
  // t in {x, y, z}; constants c bound the per-step gcd at every place.
  struct Cofactors {
    Int cx, cy, cz;
    int E;
    double arch_H;      // log max |cofactor coefficient|
    double arch_terms;  // log term count of the combinations
  };
  const Cofactors& cofactors() const;

  std::string str() const;

 private:
  Poly p_;
  Poly2 q_;
  std::optional<AffineAuto> sigma_;
  int d_;
  std::vector<Int> px_;
  std::vector<std::vector<Int>> qc_;
  Int ell_;
  mutable std::optional<Cofactors> cof_;
  mutable std::optional<double> height_gap_;
  friend double skew_height_gap(const SkewProduct& f);
};

PlaceSet bad_places(const SkewProduct& f);

// Constants of the local sandwich C' ||X||^d <= ||F(X)|| <= C ||X||^d.
struct NullConstants {
  Place place = Place::archimedean();
  double formula_c1;   // delta_v(d+1) |p|_v
  double formula_c2;   // delta_v((d+2)(d+1)/2) |q|_v
  double upper_C;      // certified upper constant (>= 1)
  double lower_Cprime; // certified lower constant in (0, 1]
  double sharp_Cprime; // grid estimate with Lipschitz slack (archimedean)
};

NullConstants nullstellensatz_constants(const SkewProduct& f, const Place& v);

// Affine local Green value g_{f,v} >= 0, within tol (exact where certified).
LocalGreen green_skew(const SkewProduct& f, const A2Point& pt, const Place& v, double tol);

HeightValue height_skew(const SkewProduct& f, const A2Point& pt, double tol);

PreperiodicCertificate is_preperiodic_skew(const SkewProduct& f, const A2Point& pt);

// Exact composition q(p^(n-1)(x0), .) o ... o q(x0, .) over a p-periodic x0.
Poly fiber_composition(const SkewProduct& f, const Rat& x0);

double skew_height_gap(const SkewProduct& f);

}  // namespace arithdyn

#endif
