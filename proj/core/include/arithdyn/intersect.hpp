#ifndef ARITHDYN_INTERSECT_HPP
#define ARITHDYN_INTERSECT_HPP

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/freeness.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/p1dyn.hpp"
#include "arithdyn/poly2.hpp"

namespace arithdyn {

// One irreducible component of a zero-dimensional solution set: points are
// (param_0(u), ..., param_k(u)) as u runs over the roots of rx.
struct VarietyComponent {
  Poly rx;                        // irreducible, primitive, positive lead
  std::vector<Poly> coord_params; // coordinates as polynomials in u mod rx
  int multiplicity = 1;
};

struct SolutionVariety {
  std::vector<VarietyComponent> components;
  bool positive_dimensional = false;
  std::vector<std::vector<P1Point>> points_at_infinity;  // P^1-type systems

  size_t count() const;
  std::vector<std::vector<Rat>> rational_points() const;
  // substitute every component into every equation, in its quotient ring
  bool verify(const std::vector<Poly2>& equations) const;
};

// minimal polynomial over Q of the given coordinate of a component
Poly minpoly_of_coordinate(const VarietyComponent& c, size_t coord);

// Core exact solver for a finite list of equations in Q[x,y] cutting out a
// zero-dimensional set; resultant elimination with shear fallback.
// Throws PositiveDimensional when a common curve is detected.
SolutionVariety solve_system_a2(const std::vector<Poly2>& equations);

// Univariate: solutions of E(x) = 0, factored.
SolutionVariety solve_system_a1(const Poly& equation);

// --- equalizer systems F^m(p) = C(p) ---

// A^1 / P^1 maps: C an arbitrary rational map (degree >= 0).
SolutionVariety solve_equalizer(const RationalMapP1& F, int m, const RationalMapP1& C);

// A^2 polynomial morphism used as comparison map C (identity = (x, y)).
struct A2Morphism {
  Poly2 c1, c2;
  static A2Morphism identity();
  int degree() const { return std::max(c1.total_degree(), c2.total_degree()); }
};

SolutionVariety solve_equalizer(const SkewProduct& F, int m, const A2Morphism& C);
SolutionVariety solve_equalizer(const HenonMap& F, int m, const A2Morphism& C);
// split endomorphisms of (P^1)^2; C given as a (possibly permuted) split map
SolutionVariety solve_equalizer(const SplitEndo& F, int m, const SplitEndo& C);

SolutionVariety solve_common(const RationalMapP1& F, const RationalMapP1& G,
                             const RationalMapP1& C, int m, int n);
SolutionVariety solve_common(const SkewProduct& F, const SkewProduct& G, const A2Morphism& C,
                             int m, int n);
SolutionVariety solve_common(const SplitEndo& F, const SplitEndo& G, const SplitEndo& C, int m,
                             int n);

// --- reports ---

struct DecayRow {
  int m = 0;
  size_t count = 0;
  double max_height = 0.0;
  double dm_times_max = 0.0;     // d^m * max height
  double decay_product = 0.0;    // (d^m - deg C) * max height
};

// canonical heights of all solutions of F^m = C for m in [m_lo, m_hi]
std::vector<DecayRow> height_decay_report(const RationalMapP1& F, const RationalMapP1& C,
                                          int m_lo, int m_hi, double tol = 1e-9);

struct DensityCell {
  int m = 0, n = 0;
  size_t count = 0;
};

struct DensityReport {
  std::vector<DensityCell> cells;
  size_t cumulative_count = 0;
  bool curve_found = false;
  std::vector<Poly2> curve_basis;  // curves of degree <= cap through all points
};

DensityReport density_report(const SplitEndo& F, const SplitEndo& G, const SplitEndo& C,
                             int m_lo, int m_hi, int n_lo, int n_hi, int curve_degree_cap);

// --- equidistribution ---

enum class ReferenceLaw { UniformCircle, Arcsine, Dirac };

struct EquidistResult {
  size_t total_points = 0;   // d^n + 1 including infinity for polynomial maps
  size_t on_law_points = 0;  // points contributing to the reference law's CDF
  double ks_distance = 0.0;
  std::vector<std::complex<double>> points;
};

// Numerically isolates all period-n points of f (roots of f^n(x) = x plus
// infinity) and compares the empirical distribution with the reference law.
EquidistResult equidistribution_check(const RationalMapP1& f, int n, ReferenceLaw law,
                                      std::complex<double> dirac_point = {0.0, 0.0});

}  // namespace arithdyn

#endif
