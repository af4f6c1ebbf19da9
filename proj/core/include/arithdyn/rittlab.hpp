#ifndef ARITHDYN_RITTLAB_HPP
#define ARITHDYN_RITTLAB_HPP

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/poly.hpp"

namespace arithdyn {

// Nonconstant linear map l(x) = a x + b over Q.
struct LinMap {
  Rat a = Rat(1), b = Rat(0);

  Rat apply(const Rat& x) const { return a * x + b; }
  LinMap inverse() const { return LinMap{Rat(1) / a, -b / a}; }
  LinMap compose(const LinMap& o) const { return LinMap{a * o.a, a * o.b + b}; }
  Poly as_poly() const { return Poly({b, a}); }
  bool operator==(const LinMap& o) const { return a == o.a && b == o.b; }
  std::string str() const;
};

// l . f . l^{-1} and l . f, f . l
Poly conjugate(const Poly& f, const LinMap& l);
Poly compose_left(const LinMap& l, const Poly& f);   // l(f(x))
Poly compose_right(const Poly& f, const LinMap& l);  // f(l(x))

// Linear map whose slope generates a proper extension of Q: alpha is a root
// of the irreducible minpoly, beta is a polynomial expression in alpha.
struct AlgLinMap {
  Poly alpha_minpoly;
  Poly beta_of_alpha;
};

struct ConjSolutions {
  std::vector<LinMap> rational;
  std::vector<AlgLinMap> extension;
  bool empty() const { return rational.empty() && extension.empty(); }
};

// All linear l with l . f . l^{-1} = g, exactly; solutions over proper
// extensions are reported through their minimal polynomials.
ConjSolutions linear_conjugation_solve(const Poly& f, const Poly& g);

// One representative (l1, l2) with f = l1 . g . l2 over Q, if any.
std::optional<std::pair<LinMap, LinMap>> linearly_related(const Poly& f, const Poly& g);

// Chebyshev normalization T_d(u + 1/u) = u^d + u^-d; T_2 = x^2 - 2.
Poly chebyshev(int d);

enum class SpecialKind { PowerConjugate, ChebyshevConjugate, NotSpecial };

struct SpecialVerdict {
  SpecialKind kind = SpecialKind::NotSpecial;
  int sign = +1;  // for ChebyshevConjugate: conjugate to sign * T_d
  std::optional<LinMap> conjugator;      // rational witness when available
  std::optional<AlgLinMap> conjugator_ext;
};

SpecialVerdict is_special(const Poly& f);

struct NormalFormXSHXT {
  long s = 0;
  long t = 1;
  Poly h;
  LinMap phi;  // phi . f . phi^{-1} = x^s h(x^t)
};

// Throws PowerMapDegenerate when f is linearly related to a power map.
NormalFormXSHXT normal_form_xsht(const Poly& f);

struct SymmetryGroup {
  bool all_scalings = false;          // power-map degenerate case
  std::vector<LinMap> rational_elements;
  long full_order = 1;                // order of G(f) over the algebraic closure
};

SymmetryGroup symmetry_group(const Poly& f);

// Linear mu with A = D . mu and C = mu^{-1} . B, given A . C = D . B with
// matching degrees.  Throws PreconditionViolated.
ConjSolutions ritt_first_step(const Poly& A, const Poly& C, const Poly& D, const Poly& B);

struct CommonNormalForm {
  LinMap phi;
  Rat eps1, eps2;  // roots of unity (+-1 over Q)
  Poly R;          // = x^s h(x^t); phi f phi^{-1} = eps1 R, phi g phi^{-1} = eps2 R
  long s = 0, t = 1;
};

// Throws SpecialInput when either polynomial is special.
std::optional<CommonNormalForm> common_normal_form(const Poly& f, const Poly& g);

}  // namespace arithdyn

#endif
