#ifndef ARITHDYN_HENON_HPP
#define ARITHDYN_HENON_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arithdyn/heights.hpp"
#include "arithdyn/places.hpp"
#include "arithdyn/poly.hpp"

namespace arithdyn {

struct A2Point {
  Rat x, y;
  // value-based comparisons (safe for non-canonical representations)
  bool operator==(const A2Point& o) const { return cmp(x, o.x) == 0 && cmp(y, o.y) == 0; }
  bool operator<(const A2Point& o) const {
    int c = cmp(x, o.x);
    if (c != 0) return c < 0;
    return cmp(y, o.y) < 0;
  }
  std::string str() const { return "(" + rat_string(x) + ", " + rat_string(y) + ")"; }
};

// One local Green value; exact is the coefficient of log p at finite places.
struct LocalGreen {
  Place place = Place::archimedean();
  Rat exact;
  double numeric = 0.0;
  double err = 0.0;
  bool exact_zero = false;

  double value() const {
    return place.is_archimedean() ? numeric : to_double(exact) * place.log_p();
  }
};

struct GreenPairAt {
  LocalGreen plus, minus;
};

// Henon-type automorphism: composition of factors h_j(x,y) = (y, P_j(y) - d_j x),
// deg P_j >= 2, delta_j != 0; degree is the product of the factor degrees.
class HenonMap {
 public:
  struct Factor {
    Poly P;
    Rat delta;
  };

  explicit HenonMap(std::vector<Factor> factors);
  static HenonMap single(Poly P, Rat delta) {
    std::vector<Factor> f;
    f.push_back({std::move(P), std::move(delta)});
    return HenonMap(std::move(f));
  }

  const std::vector<Factor>& factors() const { return factors_; }
  int degree() const { return d_; }

  A2Point forward(const A2Point& p) const;
  A2Point backward(const A2Point& p) const;

  // this . inner as factor-list concatenation (inner applied first)
  HenonMap compose(const HenonMap& inner) const;

  // The coordinate-swapped inverse: h^{-1} = swap . conj(h) . swap where
  // conj has factors (P_j / delta_j, 1 / delta_j) in reverse order.
  const HenonMap& inverse_conjugate() const;

  bool operator==(const HenonMap& o) const;
  std::string str() const;

 private:
  std::vector<Factor> factors_;
  int d_;
  mutable std::shared_ptr<HenonMap> invconj_;
  mutable std::optional<double> height_gap_;  // cached |htilde - h| empirical bound
  friend double henon_height_gap(const HenonMap& h);
};

PlaceSet bad_places(const HenonMap& h);

// Exact n-step orbit point, n may be negative.  Throws CoefficientBlowup
// past the bit-size budget.
A2Point henon_iterate(const HenonMap& h, const A2Point& p, long n);

// v-adic Green pair G+/G- at p, each within tol (exact where certified).
GreenPairAt green_henon(const HenonMap& h, const A2Point& p, const Place& v, double tol);

struct HenonHeights {
  HeightValue hhat;    // sum_v (G+ + G-)
  HeightValue htilde;  // sum_v max(G+, G-)
};

HenonHeights canonical_heights_henon(const HenonMap& h, const A2Point& p, double tol);

struct PeriodCertificate {
  bool periodic = false;
  long period = 0;
};

PeriodCertificate is_periodic_henon(const HenonMap& h, const A2Point& p);

// Empirically certified constant C with |htilde - h| <= C on the sample grid;
// used (plus margin) as the periodicity height cutoff.
double henon_height_gap(const HenonMap& h);

enum class JuliaVerdict { Bounded, Escaped, Undecided };

struct JuliaResult {
  JuliaVerdict verdict;
  long steps = 0;
};

// Membership probe for the v-adic filled Julia set (two-sided boundedness).
JuliaResult filled_julia_verdict(const HenonMap& h, const A2Point& p, const Place& v,
                                 long maxiter);

}  // namespace arithdyn

#endif
