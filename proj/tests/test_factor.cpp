#include "arithdyn/factor.hpp"

#include <random>

#include "doctest.h"

using namespace arithdyn;

namespace {
Poly P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(std::move(v));
}

Poly reassemble(const PolyFactorization& f) {
  Poly r = Poly::constant(f.unit);
  for (auto& [g, m] : f.factors) r = r * g.pow(m);
  return r;
}
}  // namespace

TEST_CASE("small factorizations") {
  Poly f = P({-1, 0, 0, 0, 1});  // x^4 - 1
  auto fz = factor_poly(f);
  CHECK(fz.factors.size() == 3);
  CHECK(reassemble(fz) == f);

  // x^2-x = x(x-1)
  fz = factor_poly(P({0, -1, 1}));
  CHECK(fz.factors.size() == 2);

  // irreducible quadratic
  CHECK(is_irreducible(P({1, 0, 1})));
  CHECK(is_irreducible(P({-2, 0, 1})));
  CHECK_FALSE(is_irreducible(P({-1, 0, 1})));
}

TEST_CASE("cyclotomic-style inputs") {
  // x^4 - x^2 + 1 = Phi_12, irreducible
  CHECK(is_irreducible(P({1, 0, -1, 0, 1})));
  // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
  auto fz = factor_poly(P({-1, 0, 0, 0, 0, 0, 1}));
  CHECK(fz.factors.size() == 4);
  CHECK(reassemble(fz) == P({-1, 0, 0, 0, 0, 0, 1}));
}

TEST_CASE("swinnerton-dyer quartic stresses recombination") {
  // x^4 - 10x^2 + 1, minimal polynomial of sqrt2+sqrt3: irreducible but splits mod every p
  CHECK(is_irreducible(P({1, 0, -10, 0, 1})));
}

TEST_CASE("eisenstein shortcut for x^63 - 2") {
  std::vector<Rat> c(64, Rat(0));
  c[0] = -2;
  c[63] = 1;
  CHECK(is_irreducible(Poly(std::move(c))));
}

TEST_CASE("multiplicities") {
  Poly f = P({1, 1}).pow(3) * P({-2, 1}).pow(2) * Rat(6);
  auto fz = factor_poly(f);
  CHECK(fz.factors.size() == 2);
  CHECK(fz.unit == Rat(6));
  CHECK(reassemble(fz) == f);
}

TEST_CASE("random product reassembly") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 12; ++trial) {
    Poly f = Poly::constant(Rat(1));
    int nf = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nf; ++i) {
      int d = 1 + static_cast<int>(rng() % 4);
      std::vector<Rat> c(d + 1);
      for (int j = 0; j <= d; ++j) c[j] = Rat(static_cast<long>(rng() % 19) - 9);
      if (c[d] == 0) c[d] = 1;
      f = f * Poly(std::move(c));
    }
    if (f.degree() < 1) continue;
    auto fz = factor_poly(f);
    CHECK(reassemble(fz) == f);
    for (auto& [g, m] : fz.factors) CHECK(is_irreducible(g));
  }
}

TEST_CASE("rational roots") {
  Poly f = P({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  auto roots = rational_roots(f);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].first == Rat(1));
  CHECK(roots[2].first == Rat(3));
}
