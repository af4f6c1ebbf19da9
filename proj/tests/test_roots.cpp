#include "arithdyn/roots.hpp"

#include "doctest.h"

using namespace arithdyn;

namespace {
Poly P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly(std::move(v));
}
}  // namespace

TEST_CASE("quadratic roots") {
  auto r = isolate_roots(P({-2, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].z.real() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r[1].z.real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r[0].err < 1e-10);
}

TEST_CASE("complex pair ordering") {
  auto r = isolate_roots(P({1, 0, 1}));  // x^2+1
  REQUIRE(r.size() == 2);
  CHECK(r[0].z.imag() == doctest::Approx(-1.0));
  CHECK(r[1].z.imag() == doctest::Approx(1.0));
}

TEST_CASE("roots of unity at degree 12") {
  std::vector<Rat> c(13, Rat(0));
  c[0] = -1;
  c[12] = 1;
  auto r = isolate_roots(Poly(std::move(c)));
  REQUIRE(r.size() == 12);
  for (auto& b : r) CHECK(std::abs(b.z) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("x^63 - 2 roots all have modulus 2^(1/63)") {
  std::vector<Rat> c(64, Rat(0));
  c[0] = -2;
  c[63] = 1;
  auto r = isolate_roots(Poly(std::move(c)));
  REQUIRE(r.size() == 63);
  double expect = std::pow(2.0, 1.0 / 63.0);
  for (auto& b : r) CHECK(std::abs(b.z) == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("huge coefficient scaling") {
  // 10^40 x^2 - 10^40: roots +-1
  Rat big(Int("10000000000000000000000000000000000000000"));
  Poly f({-big, Rat(0), big});
  auto r = isolate_roots(f);
  REQUIRE(r.size() == 2);
  CHECK(r[0].z.real() == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(r[1].z.real() == doctest::Approx(1.0).epsilon(1e-13));
}
