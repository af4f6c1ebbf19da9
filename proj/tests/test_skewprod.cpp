#include "arithdyn/skewprod.hpp"

#include <random>

#include "arithdyn/errors.hpp"
#include "doctest.h"

using namespace arithdyn;

namespace {
Poly P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(std::move(v));
}
// (x^2, y^2)
SkewProduct powmap() {
  return SkewProduct(P({0, 0, 1}), Poly2({Poly(), Poly(), Poly::constant(Rat(1))}));
}
// (x^2, y^2 + xy)
SkewProduct mixed() {
  return SkewProduct(P({0, 0, 1}), Poly2({Poly(), Poly::x(), Poly::constant(Rat(1))}));
}
// (x^2 - 1, y^2 + xy - 3/4)
SkewProduct third() {
  return SkewProduct(P({-1, 0, 1}),
                     Poly2({Poly::constant(Rat(-3, 4)), Poly::x(), Poly::constant(Rat(1))}));
}
A2Point pt(long a, long b) { return A2Point{Rat(a), Rat(b)}; }
}  // namespace

TEST_CASE("construction validates the shape") {
  CHECK_THROWS(SkewProduct(P({0, 1}), Poly2({Poly(), Poly::constant(Rat(1))})));
  // missing y^d term: q = xy has total degree 2 but zero y^2 coefficient
  CHECK_THROWS(SkewProduct(P({0, 0, 1}), Poly2({Poly(), Poly::x()})));
  CHECK(powmap().degree() == 2);
}

TEST_CASE("evaluation and composition") {
  SkewProduct f = mixed();
  CHECK(f.eval(pt(2, 3)) == A2Point{Rat(4), Rat(15)});
  SkewProduct f2 = f.compose(f);
  CHECK(f2.degree() == 4);
  A2Point q{Rat(1, 2), Rat(-3)};
  CHECK(f2.eval(q) == f.eval(f.eval(q)));
  CHECK(f.iterate(2) == f2);
}

TEST_CASE("nullstellensatz constants for the power system") {
  NullConstants n = nullstellensatz_constants(powmap(), Place::archimedean());
  CHECK(n.formula_c1 == doctest::Approx(3.0));
  CHECK(n.upper_C >= 1.0);
  // sharp ratio on the sphere is exactly 1 for (x^2, y^2, z^2)
  CHECK(n.sharp_Cprime == doctest::Approx(1.0).epsilon(0.05));
  CHECK(n.lower_Cprime > 0.0);
  CHECK(n.lower_Cprime <= 1.0);

  NullConstants n5 = nullstellensatz_constants(powmap(), Place::finite(Int(5)));
  CHECK(n5.upper_C == doctest::Approx(1.0));
  CHECK(n5.lower_Cprime == doctest::Approx(1.0));
}

TEST_CASE("formula constant C2 for the mixed map") {
  NullConstants n = nullstellensatz_constants(mixed(), Place::archimedean());
  CHECK(n.formula_c2 == doctest::Approx(6.0));
  NullConstants n5 = nullstellensatz_constants(mixed(), Place::finite(Int(5)));
  CHECK(n5.upper_C == doctest::Approx(1.0));
  CHECK(n5.lower_Cprime == doctest::Approx(1.0));
}

namespace {
// log of the v-adic sandwich ratio ||F(X)|| / ||X||^d on the lift triple
double sandwich_log_ratio(const SkewProduct& f, const Place& v, const Rat& x, const Rat& y) {
  int d = f.degree();
  Rat cx = x, cy = y;
  cx.canonicalize();
  cy.canonicalize();
  Int D(1);
  mpz_lcm(D.get_mpz_t(), Int(cx.get_den()).get_mpz_t(), Int(cy.get_den()).get_mpz_t());
  Int X = Int(Rat(cx * Rat(D)).get_num());
  Int Y = Int(Rat(cy * Rat(D)).get_num());
  Int Z = D;
  // evaluate the lift forms exactly
  Poly2 qh = f.q();
  Rat P(0), Q(0), Zd(0);
  {
    // P(X, Z) = sum px[i] X^i Z^(d-i) etc., exact integers
    Int Pv(0), Qv(0);
    std::vector<Int> xp(d + 1), yp(d + 1), zp(d + 1);
    xp[0] = yp[0] = zp[0] = 1;
    for (int i = 1; i <= d; ++i) {
      xp[i] = xp[i - 1] * X;
      yp[i] = yp[i - 1] * Y;
      zp[i] = zp[i - 1] * Z;
    }
    for (int i = 0; i <= d; ++i)
      if (f.lift_p()[i] != 0) Pv += f.lift_p()[i] * xp[i] * zp[d - i];
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j + i <= d; ++j)
        if (f.lift_q()[i][j] != 0) Qv += f.lift_q()[i][j] * xp[i] * yp[j] * zp[d - i - j];
    P = Rat(Pv);
    Q = Rat(Qv);
    Zd = Rat(f.lift_zscale() * zp[d]);
  }
  auto logv = [&](const Rat& r) -> double {
    if (r == 0) return -1e300;
    if (v.is_archimedean()) return log_abs(r);
    return -static_cast<double>(ord_p(r, v.prime())) * v.log_p();
  };
  double num = std::max({logv(P), logv(Q), logv(Zd)});
  double den = std::max({logv(Rat(X)), logv(Rat(Y)), logv(Rat(Z))});
  return num - f.degree() * den;
}
}  // namespace

TEST_CASE("homogeneous sandwich inequality holds on random points") {
  std::mt19937_64 rng(12);
  for (SkewProduct f : {powmap(), mixed(), third()}) {
    for (const Place& v : {Place::archimedean(), Place::finite(Int(2)), Place::finite(Int(3))}) {
      NullConstants n = nullstellensatz_constants(f, v);
      for (int i = 0; i < 300; ++i) {
        Rat x(static_cast<long>(rng() % 400) - 200, static_cast<long>(rng() % 40) + 1);
        Rat y(static_cast<long>(rng() % 400) - 200, static_cast<long>(rng() % 40) + 1);
        double lr = sandwich_log_ratio(f, v, x, y);
        CHECK(lr <= std::log(n.upper_C) + 1e-9);
        CHECK(lr >= std::log(n.lower_Cprime) - 1e-9);
      }
    }
  }
}

TEST_CASE("green values: power system") {
  SkewProduct f = powmap();
  LocalGreen g = green_skew(f, pt(2, 3), Place::archimedean(), 1e-9);
  CHECK(g.numeric == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(green_skew(f, pt(1, 1), Place::archimedean(), 1e-9).exact_zero);
  CHECK(green_skew(f, pt(1, 1), Place::finite(Int(7)), 1e-9).exact_zero);
  CHECK(green_skew(mixed(), pt(0, 0), Place::archimedean(), 1e-9).exact_zero);
}

TEST_CASE("good reduction places: exact log+ for non-integral points") {
  SkewProduct f = mixed();
  LocalGreen g = green_skew(f, A2Point{Rat(1, 3), Rat(2)}, Place::finite(Int(3)), 1e-9);
  CHECK(g.err == 0.0);
  CHECK(g.exact == Rat(1));  // log+ ||(1/3, 2)||_3 = log 3
}

TEST_CASE("green invariance g(f(p)) = d g(p)") {
  std::mt19937_64 rng(77);
  double tol = 1e-8;
  for (SkewProduct f : {powmap(), mixed(), third()}) {
    for (int i = 0; i < 30; ++i) {
      A2Point p{Rat(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1),
                Rat(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1)};
      LocalGreen g0 = green_skew(f, p, Place::archimedean(), tol);
      LocalGreen g1 = green_skew(f, f.eval(p), Place::archimedean(), tol);
      double v0 = g0.exact_zero ? 0.0 : g0.numeric;
      double v1 = g1.exact_zero ? 0.0 : g1.numeric;
      CHECK(std::fabs(v1 - f.degree() * v0) <= 2 * (tol + g0.err + g1.err) + 1e-9);
    }
  }
}

TEST_CASE("green bound |g - log+||.||| <= logC/(d-1)") {
  std::mt19937_64 rng(78);
  SkewProduct f = third();
  NullConstants n = nullstellensatz_constants(f, Place::archimedean());
  double bound = std::max(std::log(n.upper_C), -std::log(n.lower_Cprime)) / (f.degree() - 1);
  for (int i = 0; i < 100; ++i) {
    A2Point p{Rat(static_cast<long>(rng() % 41) - 20), Rat(static_cast<long>(rng() % 41) - 20)};
    LocalGreen g = green_skew(f, p, Place::archimedean(), 1e-8);
    double gv = g.exact_zero ? 0.0 : g.numeric;
    double lp = std::max({0.0, p.x == 0 ? 0.0 : log_abs(p.x), p.y == 0 ? 0.0 : log_abs(p.y)});
    CHECK(std::fabs(gv - lp) <= bound + 1e-6);
  }
}

TEST_CASE("truncation halving: doubling accuracy is consistent") {
  SkewProduct f = mixed();
  A2Point p{Rat(3, 2), Rat(5, 7)};
  LocalGreen g1 = green_skew(f, p, Place::archimedean(), 1e-5);
  LocalGreen g2 = green_skew(f, p, Place::archimedean(), 1e-10);
  CHECK(std::fabs(g1.numeric - g2.numeric) <= 1e-5 + 1e-10);
}

TEST_CASE("heights of the power system") {
  SkewProduct f = powmap();
  HeightValue h = height_skew(f, pt(2, 3), 1e-9);
  CHECK(h.total() == doctest::Approx(std::log(3.0)).epsilon(1e-8));
  CHECK(height_skew(f, A2Point{Rat(-1), Rat(1)}, 1e-9).exact_zero);
  CHECK(height_skew(mixed(), pt(0, 0), 1e-9).exact_zero);
}

TEST_CASE("height invariance h(f(p)) = d h(p)") {
  SkewProduct f = third();
  std::mt19937_64 rng(79);
  for (int i = 0; i < 10; ++i) {
    A2Point p{Rat(static_cast<long>(rng() % 9) - 4, 2), Rat(static_cast<long>(rng() % 9) - 4, 3)};
    double tol = 1e-8;
    HeightValue h0 = height_skew(f, p, tol);
    HeightValue h1 = height_skew(f, f.eval(p), tol);
    double v0 = h0.exact_zero ? 0.0 : h0.total();
    double v1 = h1.exact_zero ? 0.0 : h1.total();
    CHECK(std::fabs(v1 - 2 * v0) <= 2 * (tol + h0.error() + h1.error()) + 1e-9);
  }
}

TEST_CASE("preperiodicity certificates") {
  SkewProduct f = powmap();
  CHECK(is_preperiodic_skew(f, pt(0, 0)).preperiodic);
  CHECK_FALSE(is_preperiodic_skew(f, pt(2, 0)).preperiodic);
  auto c = is_preperiodic_skew(f, A2Point{Rat(-1), Rat(1)});
  CHECK(c.preperiodic);
  CHECK(c.tail == 1);
  CHECK(c.cycle == 1);
}

TEST_CASE("local-to-global on a small box") {
  for (SkewProduct f : {powmap(), mixed()}) {
    PlaceSet places = bad_places(f);
    for (long a = -4; a <= 4; ++a)
      for (long b = -4; b <= 4; ++b) {
        A2Point p = pt(a, b);
        bool pre = is_preperiodic_skew(f, p).preperiodic;
        bool all_zero = true;
        for (const Place& v : places)
          if (!green_skew(f, p, v, 1e-9).exact_zero) all_zero = false;
        CHECK(pre == all_zero);
      }
  }
}

TEST_CASE("fiber compositions") {
  // ((x^2, y^2), x0 = 1, period 1) -> y^2
  CHECK(fiber_composition(powmap(), Rat(1)) == P({0, 0, 1}));
  // ((x^2, y^2 + x), x0 = 0, period 1) -> y^2
  SkewProduct f(P({0, 0, 1}), Poly2({Poly::x(), Poly(), Poly::constant(Rat(1))}));
  CHECK(fiber_composition(f, Rat(0)) == P({0, 0, 1}));
  // ((x^2 - 1, y^2 + x), x0 = 0, period 2) -> y^4 - 1
  SkewProduct g(P({-1, 0, 1}), Poly2({Poly::x(), Poly(), Poly::constant(Rat(1))}));
  CHECK(fiber_composition(g, Rat(0)) == P({-1, 0, 0, 0, 1}));
  CHECK_THROWS_AS(fiber_composition(g, Rat(5)), NotPeriodic);
}

TEST_CASE("sigma normalization transforms points") {
  // F = sigma^{-1} (p,q) sigma given in normalized form with sigma = swap-ish
  AffineAuto sigma;
  sigma.m00 = 1;
  sigma.m01 = 0;
  sigma.m10 = 0;
  sigma.m11 = 1;
  sigma.t0 = Rat(1);  // shift x by 1 in normalized coordinates
  SkewProduct f(P({0, 0, 1}), Poly2({Poly(), Poly(), Poly::constant(Rat(1))}), sigma);
  // original point (-1, 1) maps to normalized (0, 1): preperiodic
  CHECK(is_preperiodic_skew(f, A2Point{Rat(-1), Rat(1)}).preperiodic);
  CHECK(green_skew(f, A2Point{Rat(-1), Rat(1)}, Place::archimedean(), 1e-9).exact_zero);
}
