#include "arithdyn/heights.hpp"

#include <algorithm>
#include <cmath>

#include "arithdyn/errors.hpp"
#include "arithdyn/factor.hpp"

namespace arithdyn {

double HeightValue::total() const {
  double t = arch;
  for (auto& [p, e] : finite) t += to_double(e) * log_abs(p);
  return t;
}

void HeightValue::add_finite(const Int& p, const Rat& e) {
  if (e == 0) return;
  auto it = finite.find(p);
  if (it == finite.end()) {
    finite.emplace(p, e);
  } else {
    it->second += e;
    if (it->second == 0) finite.erase(it);
  }
  exact_zero = false;
}

HeightValue& HeightValue::operator+=(const HeightValue& o) {
  arch += o.arch;
  arch_err += o.arch_err;
  trunc_err += o.trunc_err;
  for (auto& [p, e] : o.finite) add_finite(p, e);
  exact_zero = exact_zero && o.exact_zero;
  return *this;
}

HeightValue HeightValue::operator*(const Rat& s) const {
  HeightValue h = *this;
  double sd = to_double(s);
  h.arch *= sd;
  h.arch_err *= std::fabs(sd);
  h.trunc_err *= std::fabs(sd);
  for (auto& [p, e] : h.finite) e *= s;
  return h;
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rat& x) {
  // minimal polynomial q x - p, primitive
  Poly m({-Rat(x.get_num()), Rat(x.get_den())});
  return AlgebraicNumber{m.primitive(), 0};
}

HeightValue weil_height(const Rat& x0) {
  Rat x = x0;
  x.canonicalize();
  HeightValue h;
  if (x == 0) {
    h.exact_zero = true;
    return h;
  }
  bool zero = true;
  double a = log_abs(x);
  if (a > 0) {
    h.arch = a;
    h.arch_err = (std::fabs(a) + 1.0) * 4e-16;
    zero = false;
  }
  Int den(x.get_den());
  if (den != 1) {
    for (auto& [p, e] : factor_integer(den)) h.add_finite(p, Rat(e));
    zero = false;
  }
  h.exact_zero = zero;
  return h;
}

HeightValue weil_height_affine(const std::vector<Rat>& xs) {
  HeightValue h;
  // archimedean: log+ max |x_i|
  double m = 0.0;
  for (const Rat& x : xs)
    if (x != 0) m = std::max(m, log_abs(x));
  if (m > 0) {
    h.arch = m;
    h.arch_err = (m + 1.0) * 4e-16;
  }
  // finite: |x|_p > 1 iff p divides a denominator; max over i of -ord_p
  std::map<Int, long> worst;
  for (const Rat& x0 : xs) {
    if (x0 == 0) continue;
    Rat x = x0;
    x.canonicalize();
    Int den(x.get_den());
    if (den == 1) continue;
    for (auto& [p, e] : factor_integer(den)) {
      // -ord_p(x) = e here (p divides denominator, num/den coprime)
      auto it = worst.find(p);
      if (it == worst.end() || it->second < e) worst[p] = e;
    }
  }
  for (auto& [p, e] : worst) h.add_finite(p, Rat(e));
  h.exact_zero = h.arch == 0.0 && h.finite.empty();
  return h;
}

HeightValue height_algebraic(const AlgebraicNumber& a) {
  const Poly& m0 = a.minpoly;
  if (m0.degree() < 1) throw ReducibleMinimalPolynomial("constant polynomial");
  Poly m = m0.primitive();
  if (!is_irreducible(m)) throw ReducibleMinimalPolynomial("minimal polynomial is reducible: " + m.str());

  int n = m.degree();
  HeightValue h;
  if (n == 1) return weil_height(-m[0] / m[1]);

  // finite part: (1/n) * ord_p(lead) log p for p | lead (m primitive)
  Int lead(m.lead().get_num());
  if (lead < 0) lead = -lead;
  if (lead != 1)
    for (auto& [p, e] : factor_integer(lead)) h.add_finite(p, Rat(e, n));

  // archimedean part: (1/n) sum log+ |root|
  double s = 0.0, serr = 0.0;
  for (const RootBox& r : isolate_roots(m)) {
    double az = std::abs(r.z);
    if (az + r.err <= 1.0) continue;  // log+ = 0 certainly
    double v = std::log(std::max(az, 1.0));
    // d/dr log r = 1/r <= 1 on r >= 1; roots straddling 1 contribute <= err
    s += v;
    serr += r.err / std::max(az - r.err, 0.5) + 4e-16 * (std::fabs(v) + 1);
  }
  h.arch = s / n;
  h.arch_err = serr / n + 1e-15;
  h.exact_zero = h.arch == 0.0 && h.finite.empty() && serr == 0.0;
  return h;
}

}  // namespace arithdyn
