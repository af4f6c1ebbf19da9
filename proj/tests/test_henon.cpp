#include "arithdyn/henon.hpp"

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
HenonMap ysq() { return HenonMap::single(P({0, 0, 1}), Rat(1)); }  // (y, y^2 - x)
A2Point pt(long a, long b) { return A2Point{Rat(a), Rat(b)}; }
}  // namespace

TEST_CASE("iteration forward and backward") {
  HenonMap h = ysq();
  CHECK(henon_iterate(h, pt(0, 0), 5) == pt(0, 0));
  // (1,2) -> (2,3) -> (3,7)
  CHECK(henon_iterate(h, pt(1, 2), 2) == pt(3, 7));
  CHECK(henon_iterate(h, pt(2, 3), -1) == pt(1, 2));
  // round trip
  A2Point q{Rat(5, 3), Rat(-7, 2)};
  CHECK(henon_iterate(h, henon_iterate(h, q, 3), -3) == q);
}

TEST_CASE("multi-factor composition and inverse") {
  HenonMap h({{P({1, 0, 1}), Rat(-1, 2)}, {P({0, 0, 0, 1}), Rat(2)}});
  CHECK(h.degree() == 6);
  A2Point q{Rat(1, 5), Rat(3)};
  CHECK(henon_iterate(h, henon_iterate(h, q, 2), -2) == q);
}

TEST_CASE("bad places") {
  CHECK(bad_places(ysq()).size() == 1);  // archimedean only
  HenonMap h = HenonMap::single(P({1, 0, 1}), Rat(-1, 2));
  PlaceSet b = bad_places(h);
  CHECK(b.count(Place::finite(Int(2))) == 1);
}

TEST_CASE("green pair at fixed points is exactly zero") {
  HenonMap h = ysq();
  for (auto p : {pt(0, 0), pt(2, 2)}) {
    GreenPairAt g = green_henon(h, p, Place::archimedean(), 1e-9);
    CHECK(g.plus.exact_zero);
    CHECK(g.minus.exact_zero);
  }
}

TEST_CASE("green matches a high-iterate oracle in the escape regime") {
  HenonMap h = ysq();
  // oracle: G+ ~ 2^-n log ||f^n(p)|| by direct exact iteration
  A2Point p = pt(10, 100);
  A2Point cur = p;
  for (int i = 0; i < 6; ++i) cur = h.forward(cur);
  double oracle = std::max(log_abs(cur.x), log_abs(cur.y)) / 64.0;
  GreenPairAt g = green_henon(h, p, Place::archimedean(), 1e-9);
  CHECK(std::fabs(g.plus.numeric - oracle) < 1e-3);  // oracle itself truncated at n=6
  CHECK(g.plus.numeric == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("good reduction places give exact zero for integral points") {
  HenonMap h = ysq();
  GreenPairAt g = green_henon(h, pt(1, 2), Place::finite(Int(3)), 1e-9);
  CHECK(g.plus.exact_zero);
  CHECK(g.minus.exact_zero);
}

TEST_CASE("non-integral points escape p-adically with exact green value") {
  HenonMap h = ysq();
  // (1/3, 1/3): G+ at 3 should be exactly log 3 (exponent 1)
  GreenPairAt g = green_henon(h, A2Point{Rat(1, 3), Rat(1, 3)}, Place::finite(Int(3)), 1e-9);
  CHECK(g.plus.err == 0.0);
  CHECK(g.plus.exact == Rat(1));
}

TEST_CASE("periodicity certificates") {
  HenonMap h = ysq();
  auto c = is_periodic_henon(h, pt(0, 0));
  CHECK(c.periodic);
  CHECK(c.period == 1);
  auto c2 = is_periodic_henon(h, pt(2, 2));
  CHECK(c2.periodic);
  CHECK(c2.period == 1);
  CHECK_FALSE(is_periodic_henon(h, pt(1, 2)).periodic);
}

TEST_CASE("canonical heights: fixed points exactly zero, wandering positive") {
  HenonMap h = ysq();
  HenonHeights z = canonical_heights_henon(h, pt(2, 2), 1e-9);
  CHECK(z.hhat.exact_zero);
  CHECK(z.htilde.exact_zero);
  CHECK(z.hhat.total() == 0.0);

  HenonHeights w = canonical_heights_henon(h, pt(1, 2), 1e-6);
  CHECK(w.hhat.total() > 0.3);
  CHECK(w.htilde.total() > 0.3);
  // sandwich
  CHECK(w.htilde.total() <= w.hhat.total() + 2e-6);
  CHECK(w.hhat.total() / 2 <= w.htilde.total() + 2e-6);
}

TEST_CASE("invariance G+(f p) = d G+(p) within 2 tol") {
  HenonMap h = ysq();
  std::mt19937_64 rng(3);
  double tol = 1e-7;
  for (int i = 0; i < 25; ++i) {
    A2Point p{Rat(static_cast<long>(rng() % 17) - 8, static_cast<long>(rng() % 3) + 1),
              Rat(static_cast<long>(rng() % 17) - 8, static_cast<long>(rng() % 3) + 1)};
    GreenPairAt g0 = green_henon(h, p, Place::archimedean(), tol);
    GreenPairAt g1 = green_henon(h, h.forward(p), Place::archimedean(), tol);
    double v0 = g0.plus.exact_zero ? 0.0 : g0.plus.numeric;
    double v1 = g1.plus.exact_zero ? 0.0 : g1.plus.numeric;
    CHECK(std::fabs(v1 - 2 * v0) <= 2 * tol + 1e-9);
    // backward invariance
    GreenPairAt gm = green_henon(h, h.backward(p), Place::archimedean(), tol);
    double m0 = g0.minus.exact_zero ? 0.0 : g0.minus.numeric;
    double m1 = gm.minus.exact_zero ? 0.0 : gm.minus.numeric;
    CHECK(std::fabs(m1 - 2 * m0) <= 2 * tol + 1e-9);
  }
}

TEST_CASE("htilde is within a bounded gap of the weil height") {
  HenonMap h = ysq();
  double gap = henon_height_gap(h);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    A2Point p{Rat(static_cast<long>(rng() % 41) - 20), Rat(static_cast<long>(rng() % 41) - 20)};
    HenonHeights hh = canonical_heights_henon(h, p, 1e-6);
    double ht = hh.htilde.exact_zero ? 0.0 : hh.htilde.total();
    CHECK(std::fabs(ht - weil_height_affine({p.x, p.y}).total()) <= gap + 1.0);
  }
}

TEST_CASE("periodicity iff htilde exactly zero on a small box") {
  HenonMap h = ysq();
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      bool per = is_periodic_henon(h, pt(a, b)).periodic;
      HenonHeights hh = canonical_heights_henon(h, pt(a, b), 1e-8);
      CHECK(per == hh.htilde.exact_zero);
      if (!per) CHECK(hh.htilde.total() > 10 * hh.htilde.error());
    }
}

TEST_CASE("filled julia verdicts") {
  HenonMap h = ysq();
  CHECK(filled_julia_verdict(h, pt(0, 0), Place::finite(Int(5)), 50).verdict ==
        JuliaVerdict::Bounded);
  CHECK(filled_julia_verdict(h, pt(10, 100), Place::archimedean(), 50).verdict ==
        JuliaVerdict::Escaped);
  CHECK(filled_julia_verdict(h, pt(0, 0), Place::archimedean(), 50).verdict ==
        JuliaVerdict::Undecided);
  CHECK(filled_julia_verdict(h, A2Point{Rat(1, 3), Rat(1, 3)}, Place::finite(Int(3)), 50)
            .verdict == JuliaVerdict::Escaped);
}

TEST_CASE("coefficient blowup guard") {
  HenonMap h = ysq();
  CHECK_THROWS_AS(henon_iterate(h, pt(3, 7), 100), CoefficientBlowup);
}

TEST_CASE("degenerate factors rejected") {
  CHECK_THROWS_AS(HenonMap::single(P({1, 1}), Rat(1)), DegreeOne);
  CHECK_THROWS_AS(HenonMap::single(P({0, 0, 1}), Rat(0)), ZeroInput);
}
