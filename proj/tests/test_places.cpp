#include "arithdyn/places.hpp"

#include <random>

#include "arithdyn/errors.hpp"
#include "doctest.h"

using namespace arithdyn;

TEST_CASE("abs_log at finite places is the exact valuation") {
  LocalLog l = abs_log(Rat(6), Place::finite(Int(2)));
  CHECK(l.exact == Rat(-1));  // |6|_2 = 1/2
  CHECK(l.err == 0.0);

  l = abs_log(Rat(2, 3), Place::finite(Int(3)));
  CHECK(l.exact == Rat(1));  // |2/3|_3 = 3

  l = abs_log(Rat(-5), Place::archimedean());
  CHECK(l.numeric == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  CHECK(l.err > 0.0);
}

TEST_CASE("abs_log rejects zero") {
  CHECK_THROWS_AS(abs_log(Rat(0), Place::archimedean()), ZeroInput);
  CHECK_THROWS_AS(product_formula_defect(Rat(0)), ZeroInput);
}

TEST_CASE("product formula examples") {
  CHECK(std::fabs(product_formula_defect(Rat(6))) < 1e-13);
  CHECK(product_formula_defect(Rat(1)) == 0.0);
  CHECK(std::fabs(product_formula_defect(Rat(-22, 7))) < 1e-13);
}

TEST_CASE("product formula on random 64-bit rationals") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Int num = Int(rng() >> 1) + 1;
    Int den = Int(rng() >> 1) + 1;
    Rat x(num, den);
    x.canonicalize();
    if (rng() & 1) x = -x;
    CHECK(std::fabs(product_formula_defect(x)) < 1e-12);
  }
}

TEST_CASE("abs_log is additive at finite places") {
  std::mt19937_64 rng(11);
  Place v = Place::finite(Int(3));
  for (int i = 0; i < 200; ++i) {
    Rat x(static_cast<long>(rng() % 10000) + 1, static_cast<long>(rng() % 1000) + 1);
    Rat y(static_cast<long>(rng() % 10000) + 1, static_cast<long>(rng() % 1000) + 1);
    CHECK(abs_log(x * y, v).exact == abs_log(x, v).exact + abs_log(y, v).exact);
  }
}

TEST_CASE("place ordering and equality") {
  CHECK(Place::archimedean() < Place::finite(Int(2)));
  CHECK(Place::finite(Int(2)) < Place::finite(Int(3)));
  CHECK(Place::archimedean() == Place::archimedean());
  CHECK(Place::finite(Int(5)).local_degree() == 1);
}

TEST_CASE("factor_integer basics") {
  auto f = factor_integer(Int(360));
  CHECK(f[Int(2)] == 3);
  CHECK(f[Int(3)] == 2);
  CHECK(f[Int(5)] == 1);
  auto g = factor_integer(Int("18446744073709551617"));  // 2^64+1 = 274177 * 67280421310721
  CHECK(g.size() == 2);
}
