#include "arithdyn/p1dyn.hpp"

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
RationalMapP1 sq() { return RationalMapP1::polynomial(P({0, 0, 1})); }          // x^2
RationalMapP1 sqm1() { return RationalMapP1::polynomial(P({-1, 0, 1})); }       // x^2-1
RationalMapP1 sqm2() { return RationalMapP1::polynomial(P({-2, 0, 1})); }       // x^2-2
RationalMapP1 f2916() {
  return RationalMapP1::polynomial(Poly({Rat(-29, 16), Rat(0), Rat(1)}));       // x^2-29/16
}
}  // namespace

TEST_CASE("evaluation on P1") {
  CHECK(sq().eval(P1Point::of(Rat(3))) == P1Point::of(Rat(9)));
  CHECK(sqm2().eval(P1Point::infinity()) == P1Point::infinity());
  // (x^2+1)/x at 0 -> infinity
  RationalMapP1 f(P({1, 0, 1}), P({0, 1}));
  CHECK(f.eval(P1Point::of(Rat(0))) == P1Point::infinity());
  CHECK(f.eval(P1Point::infinity()) == P1Point::infinity());
  CHECK(f.eval(P1Point::of(Rat(2))) == P1Point::of(Rat(5, 2)));
}

TEST_CASE("common factors are normalized away, degenerate maps rejected") {
  RationalMapP1 f(P({-1, 0, 1}), P({-1, 1}));  // (x^2-1)/(x-1) = x+1
  CHECK(f.degree() == 1);
  CHECK(f.eval(P1Point::of(Rat(4))) == P1Point::of(Rat(5)));
  CHECK_THROWS(RationalMapP1(P({1, 1}), Poly()));      // zero denominator
  CHECK_THROWS(RationalMapP1(P({3}), P({7})));         // constant map
}

TEST_CASE("composition and iteration") {
  RationalMapP1 f = sqm2();
  RationalMapP1 f2 = f.compose(f);
  CHECK(f2.num() == P({2, 0, -4, 0, 1}) * f2.num().lead() / f2.num().lead());
  CHECK(f2.degree() == 4);
  CHECK(f.iterate(2) == f2);
}

TEST_CASE("bad places") {
  PlaceSet b = bad_places(RationalMapP1::polynomial(Poly({Rat(-1, 2), Rat(0), Rat(1)})));
  CHECK(b.count(Place::archimedean()) == 1);
  CHECK(b.count(Place::finite(Int(2))) == 1);
  PlaceSet b2 = bad_places(sq());
  CHECK(b2.size() == 1);  // only archimedean
}

TEST_CASE("height bound constants") {
  HeightBoundC c = height_bound(sq());
  CHECK(c.bound() == 0.0);  // h(x^2) = 2h(x) exactly

  HeightBoundC c1 = height_bound(sqm1());
  CHECK(c1.bound() <= 2 * std::log(2.0) + 1e-12);

  HeightBoundC c2 = height_bound(f2916());
  CHECK(c2.c_plus >= std::log(16.0) - 1e-12);

  CHECK_THROWS_AS(height_bound(RationalMapP1::polynomial(P({1, 2}))), DegreeOne);
}

TEST_CASE("preperiodicity certificates") {
  auto c = is_preperiodic_p1(sqm1(), Rat(0));
  CHECK(c.preperiodic);
  CHECK(c.tail == 0);
  CHECK(c.cycle == 2);

  CHECK_FALSE(is_preperiodic_p1(sq(), Rat(2)).preperiodic);

  auto c2 = is_preperiodic_p1(f2916(), Rat(1, 4));
  CHECK(c2.preperiodic);
  CHECK(c2.tail == 1);
  CHECK(c2.cycle == 3);

  CHECK(is_preperiodic_p1(sq(), P1Point::infinity()).preperiodic);
}

TEST_CASE("canonical height of power map is the weil height") {
  HeightValue h = canonical_height_p1(sq(), Rat(2), 1e-9);
  CHECK(h.finite.empty());
  CHECK(h.arch == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  HeightValue h2 = canonical_height_p1(sq(), Rat(2, 3), 1e-9);
  CHECK(h2.finite.at(Int(3)) == Rat(1));

  // preperiodic: exact zero
  CHECK(canonical_height_p1(sqm1(), Rat(0), 1e-9).exact_zero);
}

TEST_CASE("chebyshev oracle value") {
  // hhat_{x^2-2}(3) = log((3+sqrt5)/2) via the u + 1/u semiconjugacy
  double expect = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  HeightValue h = canonical_height_p1(sqm2(), Rat(3), 1e-8);
  CHECK(std::fabs(h.total() - expect) < 1e-6);
  CHECK(h.error() < 1e-6);
}

TEST_CASE("functoriality and comparison properties") {
  std::mt19937_64 rng(31);
  RationalMapP1 f = sqm2();
  HeightBoundC C = height_bound(f);
  double tol = 1e-7;
  for (int i = 0; i < 40; ++i) {
    Rat x(static_cast<long>(rng() % 200) - 100, static_cast<long>(rng() % 40) + 1);
    P1Point fx = f.eval(P1Point::of(x));
    if (fx.infinite) continue;
    double hf = canonical_height_p1(f, fx.value, tol).total();
    double hx = canonical_height_p1(f, x, tol).total();
    CHECK(std::fabs(hf - 2 * hx) < 2 * tol + 1e-9);
    double hw = weil_height(x).total();
    CHECK(std::fabs(hx - hw) <= C.bound() / (f.degree() - 1) + 2 * tol);
  }
}

TEST_CASE("canonical height with non-monic denominator data") {
  // f = x^2/3: fixed point 3 has height 0; lambda decomposition must cancel
  RationalMapP1 f(P({0, 0, 1}), P({3}));
  CHECK(is_preperiodic_p1(f, Rat(3)).preperiodic);
  HeightValue h = canonical_height_p1(f, Rat(3), 1e-9);
  CHECK(h.exact_zero);
  // and a non-preperiodic point still gets a sensible small height
  HeightValue h2 = canonical_height_p1(f, Rat(5), 1e-7);
  CHECK(h2.total() > 0.1);
}

TEST_CASE("preperiodic iff canonical height zero on a small box") {
  RationalMapP1 f = f2916();
  for (long num = -12; num <= 12; ++num) {
    for (long den = 1; den <= 8; ++den) {
      Rat x(num, den);
      bool pre = is_preperiodic_p1(f, x).preperiodic;
      HeightValue h = canonical_height_p1(f, x, 1e-9);
      if (pre) {
        CHECK(h.exact_zero);
      } else {
        CHECK(h.total() > 10 * h.error());
      }
    }
  }
}

TEST_CASE("halving check: doubling accuracy changes value within tol") {
  RationalMapP1 f = sqm2();
  HeightValue h1 = canonical_height_p1(f, Rat(7, 3), 1e-6);
  HeightValue h2 = canonical_height_p1(f, Rat(7, 3), 1e-12);
  CHECK(std::fabs(h1.total() - h2.total()) <= 1e-6 + 1e-12);
}

TEST_CASE("algebraic canonical height: golden-ratio-type point") {
  // roots of x^2 - x - 1 under x^2: hhat = h (power map) = (1/2) log M(x^2-x-1)
  AlgebraicNumber phi{Poly({Rat(-1), Rat(-1), Rat(1)}), 0};
  HeightValue h = canonical_height_p1(sq(), phi, 1e-9);
  double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(h.total() == doctest::Approx(0.5 * std::log(golden)).epsilon(1e-9));
}

TEST_CASE("split endomorphism heights") {
  SplitEndo F({sq(), sq()});
  HeightValue h = split_height(F, {P1Point::of(Rat(2)), P1Point::of(Rat(3))}, 1e-9);
  CHECK(h.total() == doctest::Approx(std::log(2.0) + std::log(3.0)).epsilon(1e-9));

  SplitEndo G({sq(), sqm1()});
  CHECK(split_height(G, {P1Point::of(Rat(1)), P1Point::of(Rat(0))}, 1e-9).exact_zero);
  HeightValue h3 = split_height(G, {P1Point::of(Rat(2)), P1Point::of(Rat(0))}, 1e-9);
  CHECK(h3.total() == doctest::Approx(std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("permuted split endomorphisms compose correctly") {
  // G(x,y) = (y^2, x^2): G o G = (x^4, y^4)
  SplitEndo G({sq(), sq()}, {1, 0});
  SplitEndo GG = G.compose(G);
  CHECK(GG.identity_perm());
  CHECK(GG.comps[0].num() == P({0, 0, 0, 0, 1}));
  std::vector<P1Point> X = {P1Point::of(Rat(2)), P1Point::of(Rat(3))};
  auto y = G.eval(X);
  CHECK(y[0] == P1Point::of(Rat(9)));
  CHECK(y[1] == P1Point::of(Rat(4)));
  CHECK(is_preperiodic_split(G, {P1Point::of(Rat(0)), P1Point::of(Rat(1))}));
  CHECK_FALSE(is_preperiodic_split(G, {P1Point::of(Rat(0)), P1Point::of(Rat(2))}));
}
