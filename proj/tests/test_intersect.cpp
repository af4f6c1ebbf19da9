#include "arithdyn/intersect.hpp"

#include "arithdyn/errors.hpp"
#include "doctest.h"

using namespace arithdyn;

namespace {
Poly P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(std::move(v));
}
RationalMapP1 sq() { return RationalMapP1::polynomial(P({0, 0, 1})); }
SplitEndo FS() { return SplitEndo({sq(), sq()}); }
SplitEndo GS() { return SplitEndo({sq(), sq()}, {1, 0}); }  // (y^2, x^2)
SplitEndo IdS() {
  RationalMapP1 idm(Poly::x(), Poly::constant(Rat(1)));
  return SplitEndo({idm, idm});
}
}  // namespace

TEST_CASE("split equalizer: fixed points of (x^2, y^2)") {
  SolutionVariety sol = solve_equalizer(FS(), 1, IdS());
  CHECK(sol.count() == 4);  // {0,1} x {0,1}
  auto pts = sol.rational_points();
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == std::vector<Rat>{Rat(0), Rat(0)});
  CHECK(pts[3] == std::vector<Rat>{Rat(1), Rat(1)});
}

TEST_CASE("split equalizer: second iterate has 16 points") {
  SolutionVariety sol = solve_equalizer(FS(), 2, IdS());
  CHECK(sol.count() == 16);
}

TEST_CASE("A1 equalizer: golden ratio pair") {
  RationalMapP1 C = RationalMapP1::polynomial(P({1, 1}));  // x + 1
  SolutionVariety sol = solve_equalizer(sq(), 1, C);
  REQUIRE(sol.components.size() == 1);
  CHECK(sol.components[0].rx == P({-1, -1, 1}));  // x^2 - x - 1
}

TEST_CASE("solve_common: swapped coordinates") {
  SolutionVariety sol = solve_common(FS(), GS(), IdS(), 1, 1);
  auto pts = sol.rational_points();
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == std::vector<Rat>{Rat(0), Rat(0)});
  CHECK(pts[1] == std::vector<Rat>{Rat(1), Rat(1)});
  CHECK(sol.count() == 2);
}

TEST_CASE("solve_common: incompatible systems are empty") {
  RationalMapP1 f2 = RationalMapP1::polynomial(P({-2, 0, 1}));
  SplitEndo G2({f2, f2});
  SolutionVariety sol = solve_common(FS(), G2, IdS(), 1, 1);
  CHECK(sol.count() == 0);
}

TEST_CASE("solve_common idempotence") {
  SolutionVariety a = solve_equalizer(FS(), 1, IdS());
  SolutionVariety b = solve_common(FS(), FS(), IdS(), 1, 1);
  CHECK(a.count() == b.count());
}

TEST_CASE("verification in quotient rings") {
  // the (x^2,y^2) vs (y^2,x^2) common system, verified exactly
  SplitEndo F = FS(), G = GS(), C = IdS();
  SolutionVariety sol = solve_common(F, G, C, 1, 1);
  // rebuild the defining equations
  std::vector<Poly2> eqs;
  eqs.push_back(Poly2::from_x(P({0, -1, 1})));  // x^2 - x
  {
    std::vector<Poly> yc = {Poly(), -Poly::constant(Rat(1)), Poly::constant(Rat(1))};
    eqs.push_back(Poly2(std::move(yc)));  // y^2 - y
  }
  {
    std::vector<Poly> yc = {Poly::x() * Rat(-1) * Rat(1), Poly(), Poly::constant(Rat(1))};
    eqs.push_back(Poly2(std::move(yc)));  // y^2 - x
  }
  eqs.push_back(Poly2::from_x(P({0, 0, 1})) - Poly2::y());  // x^2 - y
  CHECK(sol.verify(eqs));
}

TEST_CASE("skew equalizer") {
  SkewProduct f(P({0, 0, 1}), Poly2({Poly(), Poly(), Poly::constant(Rat(1))}));
  SolutionVariety sol = solve_equalizer(f, 1, A2Morphism::identity());
  CHECK(sol.count() == 4);
}

TEST_CASE("henon equalizer: fixed points of (y, y^2 - x)") {
  HenonMap h = HenonMap::single(P({0, 0, 1}), Rat(1));
  SolutionVariety sol = solve_equalizer(h, 1, A2Morphism::identity());
  // fixed points: y = x and y^2 - x = y: x^2 - 2x = ... points (0,0), (2,2)
  auto pts = sol.rational_points();
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == std::vector<Rat>{Rat(0), Rat(0)});
  CHECK(pts[1] == std::vector<Rat>{Rat(2), Rat(2)});
}

TEST_CASE("positive dimensional detection") {
  // single equation -> curve
  std::vector<Poly2> eqs = {Poly2::from_x(P({0, 0, 1})) - Poly2::y()};
  CHECK_THROWS_AS(solve_system_a2(eqs), PositiveDimensional);
  // duplicated equation: all pairwise resultants vanish
  eqs.push_back(eqs[0]);
  CHECK_THROWS_AS(solve_system_a2(eqs), PositiveDimensional);
}

TEST_CASE("height decay for F = x^2, C = 2x") {
  RationalMapP1 C = RationalMapP1::polynomial(P({0, 2}));
  auto rows = height_decay_report(sq(), C, 1, 4, 1e-10);
  REQUIRE(rows.size() == 4);
  double log2 = std::log(2.0);
  for (const auto& r : rows) {
    CHECK(std::fabs(r.decay_product - log2) < 1e-7);
    CHECK(r.dm_times_max <= 2 * log2 + 1e-9);  // bounded
    CHECK(r.count == (1u << r.m));
  }
  // monotone-bounded d^m * max across the range
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].dm_times_max <= rows[i - 1].dm_times_max + 1e-9);
}

TEST_CASE("height decay with identity comparison: all preperiodic") {
  auto rows = height_decay_report(sq(), RationalMapP1(Poly::x(), Poly::constant(Rat(1))), 1, 3,
                                  1e-9);
  for (const auto& r : rows) CHECK(r.max_height == 0.0);
}

TEST_CASE("density report: diagonal cell admits curves, full range does not") {
  DensityReport one = density_report(FS(), GS(), IdS(), 1, 1, 1, 1, 3);
  CHECK(one.cumulative_count == 2);
  CHECK(one.curve_found);
  for (const Poly2& c : one.curve_basis) {
    CHECK(c.eval(Rat(0), Rat(0)) == Rat(0));
    CHECK(c.eval(Rat(1), Rat(1)) == Rat(0));
  }
  // over the full {1,2} x {1,2} range the (2,2) cell contributes the whole
  // 4 x 4 grid of fourth-roots pairs: no curve of degree <= 3 passes
  // through all of them
  DensityReport all = density_report(FS(), GS(), IdS(), 1, 2, 1, 2, 3);
  CHECK(all.cumulative_count == 26);
  CHECK_FALSE(all.curve_found);
}

TEST_CASE("minpoly of coordinates") {
  RationalMapP1 C = RationalMapP1::polynomial(P({0, 2}));
  SolutionVariety sol = solve_equalizer(sq(), 2, C);  // x^4 = 2x
  bool found_cubic = false;
  for (const auto& comp : sol.components) {
    if (comp.rx.degree() == 3) {
      CHECK(minpoly_of_coordinate(comp, 0) == P({-2, 0, 0, 1}));
      found_cubic = true;
    }
  }
  CHECK(found_cubic);
}

TEST_CASE("equidistribution: x^2 period 6 against the circle law") {
  EquidistResult r = equidistribution_check(sq(), 6, ReferenceLaw::UniformCircle);
  CHECK(r.total_points == 65);  // 63 roots of unity + 0 + oo
  CHECK(r.ks_distance < 0.06);
}

TEST_CASE("equidistribution: x^2 - 2 period 5 against arcsine") {
  RationalMapP1 f = RationalMapP1::polynomial(P({-2, 0, 1}));
  EquidistResult r = equidistribution_check(f, 5, ReferenceLaw::Arcsine);
  CHECK(r.total_points == 33);
  CHECK(r.ks_distance < 0.1);
}

TEST_CASE("equidistribution: dirac reference at a fixed point") {
  // x^2 has fixed points {0, 1, oo}: against Dirac at 1 the distance is 2/3
  EquidistResult r = equidistribution_check(sq(), 1, ReferenceLaw::Dirac, {1.0, 0.0});
  CHECK(r.total_points == 3);
  CHECK(r.ks_distance == doctest::Approx(2.0 / 3.0));
}
