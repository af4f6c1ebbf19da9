#ifndef ARITHDYN_FACTOR_HPP
#define ARITHDYN_FACTOR_HPP

#include <utility>
#include <vector>

#include "arithdyn/poly.hpp"

namespace arithdyn {

// f = unit * prod factors[i].first ^ factors[i].second, each factor a
// primitive irreducible integer polynomial with positive leading coefficient,
// ordered by (degree, coefficient sequence).
struct PolyFactorization {
  Rat unit;
  std::vector<std::pair<Poly, int>> factors;
};

PolyFactorization factor_poly(const Poly& f);

bool is_irreducible(const Poly& f);

// Rational roots of f with multiplicities.
std::vector<std::pair<Rat, int>> rational_roots(const Poly& f);

}  // namespace arithdyn

#endif
