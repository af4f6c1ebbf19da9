#include "arithdyn/rittlab.hpp"

#include <algorithm>
#include <numeric>

#include "arithdyn/errors.hpp"
#include "arithdyn/factor.hpp"

namespace arithdyn {

std::string LinMap::str() const {
  Poly p = as_poly();
  return p.str();
}

Poly compose_left(const LinMap& l, const Poly& f) { return f * l.a + Poly::constant(l.b); }

Poly compose_right(const Poly& f, const LinMap& l) { return f.compose(l.as_poly()); }

Poly conjugate(const Poly& f, const LinMap& l) {
  return compose_left(l, compose_right(f, l.inverse()));
}

Poly chebyshev(int d) {
  if (d < 1) throw std::invalid_argument("chebyshev needs d >= 1");
  Poly tm1 = Poly::constant(Rat(2));  // T_0 = 2
  Poly t = Poly::x();                 // T_1 = x
  for (int i = 1; i < d; ++i) {
    Poly next = Poly::x() * t - tm1;
    tm1 = std::move(t);
    t = std::move(next);
  }
  return t;
}

namespace {

// ---- arithmetic in Q[z]/(m), elements as reduced Polys in z ----

Poly qr_reduce(const Poly& a, const Poly& m) { return a.divmod(m).second; }

Poly qr_mul(const Poly& a, const Poly& b, const Poly& m) { return qr_reduce(a * b, m); }

Poly qr_inv(const Poly& a, const Poly& m) {
  Poly r0 = m, r1 = qr_reduce(a, m);
  Poly s0, s1 = Poly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Poly s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0.degree() != 0) throw std::logic_error("qr_inv: not invertible");
  return qr_reduce(s0 / r0[0], m);
}

// x-polynomial with coefficients in Q[z]/(m)
using QPoly = std::vector<Poly>;

void qp_trim(QPoly& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

QPoly qp_from(const Poly& f) {
  QPoly out(f.coeffs().size());
  for (size_t i = 0; i < f.coeffs().size(); ++i) out[i] = Poly::constant(f[i]);
  return out;
}

QPoly qp_add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  qp_trim(r);
  return r;
}

QPoly qp_mul(const QPoly& a, const QPoly& b, const Poly& m) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = qr_reduce(r[i + j] + a[i] * b[j], m);
    }
  }
  qp_trim(r);
  return r;
}

QPoly qp_scale(const QPoly& a, const Poly& c, const Poly& m) {
  QPoly r = a;
  for (Poly& x : r) x = qr_mul(x, c, m);
  qp_trim(r);
  return r;
}

// f(alpha x + beta) with alpha, beta in Q[z]/(m)
QPoly qp_compose_affine(const Poly& f, const Poly& alpha, const Poly& beta, const Poly& m) {
  QPoly lin = {beta, alpha};
  qp_trim(lin);
  QPoly r;
  for (size_t i = f.coeffs().size(); i-- > 0;) {
    r = qp_mul(r, lin, m);
    if (f[i] != 0) r = qp_add(r, QPoly{Poly::constant(f[i])});
  }
  return r;
}

bool qp_is_zero(const QPoly& a) {
  for (const Poly& c : a)
    if (!c.is_zero()) return false;
  return true;
}

// candidates for alpha with alpha^n = c, as (rational values, extension minpolys)
struct PowerRootCandidates {
  std::vector<Rat> rational;
  std::vector<Poly> minpolys;  // irreducible of degree >= 2
};

PowerRootCandidates roots_of_power(long n, const Rat& c) {
  std::vector<Rat> coeffs(static_cast<size_t>(n) + 1, Rat(0));
  coeffs[0] = -c;
  coeffs[static_cast<size_t>(n)] = 1;
  Poly zn(std::move(coeffs));
  PowerRootCandidates out;
  for (auto& [g, mult] : factor_poly(zn).factors) {
    if (g.degree() == 1)
      out.rational.push_back(-g[0] / g[1]);
    else
      out.minpolys.push_back(g);
  }
  std::sort(out.rational.begin(), out.rational.end());
  return out;
}

}  // namespace

ConjSolutions linear_conjugation_solve(const Poly& f, const Poly& g) {
  int d = f.degree();
  if (d < 2 || g.degree() != d)
    throw PreconditionViolated("linear_conjugation_solve needs equal degrees >= 2");
  ConjSolutions out;
  // l f = g l with l = alpha x + beta:
  //   alpha^(d-1) = f_d / g_d,  beta determined linearly per alpha.
  PowerRootCandidates cands = roots_of_power(d - 1, f.lead() / g.lead());
  Rat dd(d);
  for (const Rat& alpha : cands.rational) {
    // x^{d-1}: alpha f_{d-1} = d g_d alpha^{d-1} beta + g_{d-1} alpha^{d-1}
    Rat apow = rat_pow(alpha, static_cast<unsigned long>(d - 1));
    Rat beta = (alpha * f[d - 1] - g[d - 1] * apow) / (dd * g.lead() * apow);
    LinMap l{alpha, beta};
    if (compose_left(l, f) == compose_right(g, l)) out.rational.push_back(l);
  }
  for (const Poly& m : cands.minpolys) {
    Poly alpha = Poly::x();
    Poly apow = qr_reduce(alpha.pow(static_cast<unsigned>(d - 1)), m);
    Poly num = qr_reduce(alpha * f[d - 1] - apow * g[d - 1], m);
    Poly beta = qr_mul(num, qr_inv(apow * (dd * g.lead()), m), m);
    // verify alpha f + beta - g(alpha x + beta) = 0 in (Q[z]/m)[x]
    QPoly lhs = qp_scale(qp_from(f), alpha, m);
    lhs = qp_add(lhs, QPoly{beta});
    QPoly rhs = qp_compose_affine(g, alpha, beta, m);
    QPoly diff = qp_add(lhs, qp_scale(rhs, Poly::constant(Rat(-1)), m));
    if (qp_is_zero(diff)) out.extension.push_back(AlgLinMap{m, beta});
  }
  std::sort(out.rational.begin(), out.rational.end(), [](const LinMap& x, const LinMap& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  return out;
}

std::optional<std::pair<LinMap, LinMap>> linearly_related(const Poly& f, const Poly& g) {
  int d = f.degree();
  if (d < 2 || g.degree() != d)
    throw PreconditionViolated("linearly_related needs equal degrees >= 2");
  // f = l1 g l2, l2 = a2 x + b2, with
  //   b2(a2) = (f_{d-1} g_d a2 / f_d - g_{d-1}) / (d g_d)
  //   a1(a2) = f_d / (g_d a2^d)
  // and polynomial consistency conditions on a2 from coefficients d-2 .. 1.
  Rat dd(d);
  Poly a2 = Poly::x();
  Poly b2 = (a2 * (f[d - 1] * g.lead() / f.lead()) - Poly::constant(g[d - 1])) / (dd * g.lead());
  // G_k(a2) = coeff of x^k in g(a2 x + b2(a2))
  auto Gk = [&](int k) {
    Poly acc;
    for (int j = k; j <= d; ++j) {
      if (g[j] == 0) continue;
      // g_j * C(j, k) * a2^k * b2^(j-k)
      Rat binom(1);
      for (int t = 0; t < k; ++t) binom *= Rat(j - t) / Rat(t + 1);
      acc = acc + Poly::monomial(g[j] * binom, static_cast<size_t>(k)) *
                      b2.pow(static_cast<unsigned>(j - k));
    }
    return acc;
  };
  // condition: f_k * g_d * a2^d = f_d * G_k(a2) * a2^? ... with a1 = f_d/(g_d a2^d):
  //   f_k = a1 G_k  =>  f_k g_d a2^d - f_d G_k(a2) = 0   (k = 1..d-2)
  Poly cond;
  for (int k = 1; k <= d - 2; ++k) {
    Poly e = Poly::monomial(f[k] * g.lead(), static_cast<size_t>(d)) - Gk(k) * f.lead();
    cond = poly_gcd(cond, e);
    if (cond.degree() == 0 && !cond.is_zero()) break;
  }
  std::vector<Rat> cand;
  if (cond.is_zero()) {
    cand.push_back(Rat(1));  // continuum: monic-centered representative
  } else if (cond.degree() == 0) {
    return std::nullopt;
  } else {
    for (auto& [root, mult] : rational_roots(cond))
      if (root != 0) cand.push_back(root);
    if (cand.empty()) return std::nullopt;
  }
  for (const Rat& a2v : cand) {
    Rat b2v = b2.eval(a2v);
    Rat a1v = f.lead() / (g.lead() * rat_pow(a2v, static_cast<unsigned long>(d)));
    LinMap l2{a2v, b2v};
    Poly gl2 = compose_right(g, l2);
    Rat b1v = f[0] - a1v * gl2[0];
    LinMap l1{a1v, b1v};
    if (compose_left(l1, gl2) == f) return std::make_pair(l1, l2);
  }
  return std::nullopt;
}

SpecialVerdict is_special(const Poly& f) {
  int d = f.degree();
  if (d < 2) throw PreconditionViolated("is_special needs degree >= 2");
  SpecialVerdict v;
  ConjSolutions pow = linear_conjugation_solve(f, Poly::monomial(Rat(1), static_cast<size_t>(d)));
  if (!pow.empty()) {
    v.kind = SpecialKind::PowerConjugate;
    if (!pow.rational.empty()) v.conjugator = pow.rational.front();
    else v.conjugator_ext = pow.extension.front();
    return v;
  }
  Poly td = chebyshev(d);
  for (int sign : {+1, -1}) {
    ConjSolutions ch = linear_conjugation_solve(f, sign > 0 ? td : -td);
    if (!ch.empty()) {
      v.kind = SpecialKind::ChebyshevConjugate;
      v.sign = sign;
      if (!ch.rational.empty()) v.conjugator = ch.rational.front();
      else v.conjugator_ext = ch.extension.front();
      return v;
    }
  }
  v.kind = SpecialKind::NotSpecial;
  return v;
}

namespace {

bool is_power_related(const Poly& f) {
  // f = a (x - r)^d + s  <=>  f' has a single root of multiplicity d-1
  int d = f.degree();
  if (d < 2) return false;
  Poly df = f.derivative();
  // df = c (x - r)^(d-1)?
  Rat c = df.lead();
  Rat r = -df[d - 2] / (c * Rat(d - 1));
  Poly probe = Poly({-r, Rat(1)}).pow(static_cast<unsigned>(d - 1)) * c;
  return probe == df;
}

// s, t, h for the already-conjugated polynomial u = x^s h(x^t), t maximal;
// requires u(0) fixed-point structure (u has zero constant term when s >= 1).
bool xsht_split(const Poly& u, long* s, long* t, Poly* h) {
  std::vector<long> support;
  for (int i = 0; i <= u.degree(); ++i)
    if (u[i] != 0) support.push_back(i);
  if (support.empty()) return false;
  long smin = support.front();
  long g = 0;
  for (long e : support) g = std::gcd(g, e - smin);
  if (g == 0) g = 1;  // monomial: h constant
  *s = smin;
  *t = g;
  std::vector<Rat> hc(static_cast<size_t>((u.degree() - smin) / g) + 1, Rat(0));
  for (long e : support) hc[static_cast<size_t>((e - smin) / g)] = u[static_cast<size_t>(e)];
  *h = Poly(std::move(hc));
  return true;
}

}  // namespace

NormalFormXSHXT normal_form_xsht(const Poly& f) {
  int d = f.degree();
  if (d < 2) throw PreconditionViolated("normal_form_xsht needs degree >= 2");
  if (is_power_related(f)) throw PowerMapDegenerate("input is linearly related to a power map");

  NormalFormXSHXT best;
  bool have = false;
  auto consider = [&](const LinMap& phi) {
    Poly u = conjugate(f, phi);
    long s, t;
    Poly h;
    if (!xsht_split(u, &s, &t, &h)) return;
    if (s >= 1 && h[0] == 0) return;  // s must absorb the full multiplicity
    if (s == 0 && u[0] == 0) return;
    if (!have || t > best.t || (t == best.t && s > best.s)) {
      best = NormalFormXSHXT{s, t, h, phi};
      have = true;
    }
  };
  // centering translation (kills the subleading coefficient): the only
  // candidate that can reach t >= 2
  Rat c_center = -f[d - 1] / (f.lead() * Rat(d));
  consider(LinMap{Rat(1), -c_center});
  // rational fixed points give x^s factorizations with s = local multiplicity
  Poly fix = f - Poly::x();
  for (auto& [root, mult] : rational_roots(fix)) consider(LinMap{Rat(1), -root});
  if (!have) {
    // fall back to the identity frame: s = 0, t = 1, h = f
    consider(LinMap{Rat(1), Rat(0)});
  }
  if (!have) throw std::logic_error("normal_form_xsht: no frame found");
  // re-verify the conjugation identity exactly
  Poly u = conjugate(f, best.phi);
  Poly rebuilt;
  for (int i = 0; i <= best.h.degree(); ++i)
    rebuilt = rebuilt + Poly::monomial(best.h[i], static_cast<size_t>(best.s + best.t * i));
  if (!(rebuilt == u)) throw std::logic_error("normal_form_xsht: verification failed");
  return best;
}

SymmetryGroup symmetry_group(const Poly& f) {
  int d = f.degree();
  if (d < 2) throw PreconditionViolated("symmetry_group needs degree >= 2");
  SymmetryGroup out;
  if (is_power_related(f)) {
    out.all_scalings = true;
    return out;
  }
  // nu f = f mu with mu = alpha x + beta(alpha):
  //   beta = f_{d-1} (alpha - 1) / (d f_d)
  // remaining coefficient equations cut out the valid alphas.
  Rat dd(d);
  Poly alpha = Poly::x();
  Poly beta = (alpha - Poly::constant(Rat(1))) * (f[d - 1] / (dd * f.lead()));
  // f(alpha x + beta): coefficient of x^k as polynomial in alpha
  auto Fk = [&](int k) {
    Poly acc;
    for (int j = k; j <= d; ++j) {
      if (f[j] == 0) continue;
      Rat binom(1);
      for (int t = 0; t < k; ++t) binom *= Rat(j - t) / Rat(t + 1);
      // f_j C(j,k) alpha^k beta^(j-k)
      acc = acc + Poly::monomial(f[j] * binom, static_cast<size_t>(k)) *
                      beta.pow(static_cast<unsigned>(j - k));
    }
    return acc;
  };
  // nu = alpha^d x + beta', so x^k equation (1 <= k <= d-2): alpha^d f_k = F_k(alpha)
  Poly cond;
  for (int k = 1; k <= d - 2; ++k) {
    Poly e = Fk(k) - Poly::monomial(f[k], static_cast<size_t>(d));
    cond = poly_gcd(cond, e);
    if (cond.degree() == 0 && !cond.is_zero()) break;
  }
  auto verify_rational = [&](const Rat& av) -> bool {
    if (av == 0) return false;
    Rat bv = beta.eval(av);
    LinMap mu{av, bv};
    Poly fmu = compose_right(f, mu);
    Rat nu_a = rat_pow(av, static_cast<unsigned long>(d));
    Rat nu_b = fmu[0] - nu_a * f[0];
    if (compose_left(LinMap{nu_a, nu_b}, f) == fmu) {
      out.rational_elements.push_back(mu);
      return true;
    }
    return false;
  };
  long ext_count = 0;
  if (cond.is_zero()) {
    // d = 2: no interior constraints; the two slope candidates are +-1
    verify_rational(Rat(1));
    verify_rational(Rat(-1));
  } else {
    for (auto& [g, mult] : factor_poly(cond).factors) {
      if (g == Poly::x()) continue;
      if (g.degree() == 1) {
        verify_rational(-g[0] / g[1]);
      } else {
        // verify nu f = f mu in (Q[z]/g)[x] with alpha = z, beta = beta(z)
        const Poly& m = g;
        Poly alphaz = qr_reduce(Poly::x(), m);
        Poly betaz = qr_reduce(beta, m);
        QPoly fmu = qp_compose_affine(f, alphaz, betaz, m);
        Poly nu_a = qr_reduce(alphaz.pow(static_cast<unsigned>(d)), m);
        Poly nu_b = (fmu.empty() ? Poly() : fmu[0]) - qr_mul(nu_a, Poly::constant(f[0]), m);
        QPoly nuf = qp_scale(qp_from(f), nu_a, m);
        nuf = qp_add(nuf, QPoly{nu_b});
        QPoly diff = qp_add(fmu, qp_scale(nuf, Poly::constant(Rat(-1)), m));
        if (qp_is_zero(diff)) ext_count += m.degree();
      }
    }
  }
  std::sort(out.rational_elements.begin(), out.rational_elements.end(),
            [](const LinMap& x, const LinMap& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
  out.full_order = static_cast<long>(out.rational_elements.size()) + ext_count;
  return out;
}

ConjSolutions ritt_first_step(const Poly& A, const Poly& C, const Poly& D, const Poly& B) {
  if (A.degree() != D.degree() || C.degree() != B.degree() || A.degree() < 2 || C.degree() < 2)
    throw PreconditionViolated("ritt_first_step: degree pattern mismatch");
  if (!(A.compose(C) == D.compose(B)))
    throw PreconditionViolated("ritt_first_step: A о C != D o B");
  int n = A.degree();
  ConjSolutions out;
  PowerRootCandidates cands = roots_of_power(n, A.lead() / D.lead());
  Rat nn(n);
  for (const Rat& alpha : cands.rational) {
    Rat apow = rat_pow(alpha, static_cast<unsigned long>(n - 1));
    // x^{n-1}: n D_n alpha^{n-1} beta + D_{n-1} alpha^{n-1} = A_{n-1}
    Rat beta = (A[n - 1] - D[n - 1] * apow) / (nn * D.lead() * apow);
    LinMap mu{alpha, beta};
    // verify A = D . mu and C = mu^{-1} . B  <=>  mu . C = B
    if (compose_right(D, mu) == A && compose_left(mu, C) == B) out.rational.push_back(mu);
  }
  for (const Poly& m : cands.minpolys) {
    Poly alpha = Poly::x();
    Poly apow = qr_reduce(alpha.pow(static_cast<unsigned>(n - 1)), m);
    Poly beta =
        qr_mul(Poly::constant(A[n - 1]) - apow * D[n - 1], qr_inv(apow * (nn * D.lead()), m), m);
    QPoly lhs = qp_compose_affine(D, alpha, beta, m);
    QPoly rhs = qp_from(A);
    QPoly diff = qp_add(lhs, qp_scale(rhs, Poly::constant(Rat(-1)), m));
    if (!qp_is_zero(diff)) continue;
    // mu C = B: alpha * C + beta = B
    QPoly mc = qp_scale(qp_from(C), alpha, m);
    mc = qp_add(mc, QPoly{beta});
    QPoly df2 = qp_add(mc, qp_scale(qp_from(B), Poly::constant(Rat(-1)), m));
    if (qp_is_zero(df2)) out.extension.push_back(AlgLinMap{m, beta});
  }
  std::sort(out.rational.begin(), out.rational.end(), [](const LinMap& x, const LinMap& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  return out;
}

std::optional<CommonNormalForm> common_normal_form(const Poly& f, const Poly& g) {
  int d = f.degree();
  if (d < 2 || g.degree() != d)
    throw PreconditionViolated("common_normal_form needs equal degrees >= 2");
  if (is_special(f).kind != SpecialKind::NotSpecial ||
      is_special(g).kind != SpecialKind::NotSpecial)
    throw SpecialInput("common_normal_form expects non-special polynomials");
  // necessary shape: f = l . g for a linear l conjugate to a root-of-unity
  // scaling; over Q the slope is +-1.
  Rat alpha = f.lead() / g.lead();
  Poly diff = f - g * alpha;
  if (diff.degree() >= 1) return std::nullopt;
  Rat beta = diff.is_zero() ? Rat(0) : diff[0];
  if (alpha == 1) {
    if (beta != 0) return std::nullopt;
    NormalFormXSHXT nf = normal_form_xsht(f);
    return CommonNormalForm{nf.phi, Rat(1), Rat(1),
                            conjugate(f, nf.phi), nf.s, nf.t};
  }
  if (alpha != -1) return std::nullopt;  // slope must be a rational root of unity
  Rat c = beta / 2;  // fixed point of l(x) = -x + beta
  LinMap phi{Rat(1), -c};
  Poly fh = conjugate(f, phi), gh = conjugate(g, phi);
  if (!(fh == -gh)) return std::nullopt;
  long s, t;
  Poly h;
  if (!xsht_split(gh, &s, &t, &h)) return std::nullopt;
  if (t % 2 != 0) {
    // -1 must be a t-th root of unity for the eps labels to be consistent
    return std::nullopt;
  }
  // R = phi f phi^{-1}; then g-side carries eps2 = -1
  return CommonNormalForm{phi, Rat(1), Rat(-1), fh, s, t};
}

}  // namespace arithdyn
