#include "arithdyn/p1dyn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "arithdyn/errors.hpp"
#include "arithdyn/factor.hpp"
#include "arithdyn/padic.hpp"

namespace arithdyn {

namespace {

constexpr size_t kBitBudget = 1u << 20;

// Evaluate the form with coefficient list c (entry i multiplies a^i b^(d-i)).
Int eval_form_int(const std::vector<Int>& c, const Int& a, const Int& b) {
  int d = static_cast<int>(c.size()) - 1;
  Int r(0), apow(1);
  std::vector<Int> bpow(d + 1);
  bpow[0] = 1;
  for (int i = 1; i <= d; ++i) bpow[i] = bpow[i - 1] * b;
  for (int i = 0; i <= d; ++i) {
    if (c[i] != 0) r += c[i] * apow * bpow[d - i];
    apow *= a;
  }
  return r;
}

double eval_form_double(const std::vector<Int>& c, double a, double b) {
  int d = static_cast<int>(c.size()) - 1;
  double r = 0, apow = 1;
  std::vector<double> bpow(d + 1);
  bpow[0] = 1;
  for (int i = 1; i <= d; ++i) bpow[i] = bpow[i - 1] * b;
  for (int i = 0; i <= d; ++i) {
    if (c[i] != 0) r += mpz_get_d(c[i].get_mpz_t()) * apow * bpow[d - i];
    apow *= a;
  }
  return r;
}

Poly eval_form_poly(const std::vector<Int>& c, const Poly& a, const Poly& b) {
  int d = static_cast<int>(c.size()) - 1;
  Poly r;
  Poly apow = Poly::constant(Rat(1));
  std::vector<Poly> bpow(d + 1);
  bpow[0] = Poly::constant(Rat(1));
  for (int i = 1; i <= d; ++i) bpow[i] = bpow[i - 1] * b;
  for (int i = 0; i <= d; ++i) {
    if (c[i] != 0) r = r + apow * bpow[d - i] * Rat(c[i]);
    apow = apow * a;
  }
  return r;
}

}  // namespace

RationalMapP1::RationalMapP1(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroInput("rational map: zero denominator");
  if (num_.is_zero() && den_.degree() < 1)
    throw ZeroInput("rational map: constant zero");
  Poly g = poly_gcd(num_, den_);
  if (g.degree() >= 1) {
    num_ = num_.divmod(g).first;
    den_ = den_.divmod(g).first;
  }
  d_ = std::max(num_.degree(), den_.degree());
  if (d_ < 1) throw DegreeOne("rational map must be nonconstant");

  // primitive joint integer lift, sign fixed by den's leading coefficient
  Int L(1);
  for (const Rat& a : num_.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), a.get_den_mpz_t());
  for (const Rat& a : den_.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), a.get_den_mpz_t());
  ln_.assign(d_ + 1, Int(0));
  ld_.assign(d_ + 1, Int(0));
  for (int i = 0; i <= num_.degree(); ++i) ln_[i] = Int(Rat(num_[i] * Rat(L)).get_num());
  for (int i = 0; i <= den_.degree(); ++i) ld_[i] = Int(Rat(den_[i] * Rat(L)).get_num());
  Int g2(0);
  for (const Int& c : ln_) mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), c.get_mpz_t());
  for (const Int& c : ld_) mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), c.get_mpz_t());
  Int lead_den = ld_[den_.degree()];
  if (lead_den < 0) g2 = -g2;
  for (Int& c : ln_) c /= g2;
  for (Int& c : ld_) c /= g2;

  // regularity: the two degree-d forms must have no common zero
  {
    std::vector<Rat> nr(ln_.size()), dr(ld_.size());
    for (size_t i = 0; i < ln_.size(); ++i) nr[i] = Rat(ln_[i]);
    for (size_t i = 0; i < ld_.size(); ++i) dr[i] = Rat(ld_[i]);
    Rat r = form_resultant(Poly(std::move(nr)), Poly(std::move(dr)), d_);
    if (r == 0) throw ZeroInput("rational map: numerator and denominator share a root");
    res_ = Int(r.get_num());  // integer since forms are integral
  }
}

P1Point RationalMapP1::eval(const P1Point& x) const {
  Int a, b;
  if (x.infinite) {
    a = 1;
    b = 0;
  } else {
    a = Int(x.value.get_num());
    b = Int(x.value.get_den());
  }
  Int A = eval_form_int(ln_, a, b);
  Int B = eval_form_int(ld_, a, b);
  if (B == 0) return P1Point::infinity();
  Rat v(A, B);
  v.canonicalize();
  return P1Point::of(v);
}

RationalMapP1 RationalMapP1::compose(const RationalMapP1& inner) const {
  Poly a = inner.num_, b = inner.den_;
  // pad to common degree d_inner as forms
  Poly N = eval_form_poly(ln_, a, b);
  Poly D = eval_form_poly(ld_, a, b);
  return RationalMapP1(std::move(N), std::move(D));
}

RationalMapP1 RationalMapP1::iterate(unsigned n) const {
  RationalMapP1 r = RationalMapP1(Poly::x(), Poly::constant(Rat(1)));
  for (unsigned i = 0; i < n; ++i) {
    r = compose(r);
    if (static_cast<size_t>(r.degree()) > (1u << 14))
      throw DegreeBudgetExceeded("iterate: degree too large");
  }
  return r;
}

namespace {

// Solve M w = rhs over Q by Gaussian elimination; M square nonsingular.
std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs) {
  size_t n = M.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular system");
    std::swap(M[piv], M[col]);
    std::swap(rhs[piv], rhs[col]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col] == 0) continue;
      Rat f = M[r][col] / M[col][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rat> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = rhs[i] / M[i][i];
  return w;
}

}  // namespace

const RationalMapP1::Cofactors& RationalMapP1::cofactors() const {
  if (cof_) return *cof_;
  int d = d_;
  size_t n = 2 * static_cast<size_t>(d);
  // unknowns: u coeffs (d), v coeffs (d); u = sum u_j a^j b^(d-1-j)
  // row k: coefficient of a^k b^(2d-1-k) of u*N + v*D
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
  for (size_t j = 0; j < static_cast<size_t>(d); ++j) {
    for (size_t i = 0; i < ln_.size(); ++i) {
      M[i + j][j] += Rat(ln_[i]);
      M[i + j][d + j] += Rat(ld_[i]);
    }
  }
  auto solve_for = [&](size_t target_row) {
    std::vector<Rat> rhs(n, Rat(0));
    rhs[target_row] = 1;
    std::vector<Rat> w = solve_linear(M, rhs);
    Int L(1);
    for (const Rat& x : w) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Int> u(d), v(d);
    for (int j = 0; j < d; ++j) {
      u[j] = Int(Rat(w[j] * Rat(L)).get_num());
      v[j] = Int(Rat(w[d + j] * Rat(L)).get_num());
    }
    return std::make_pair(std::make_pair(std::move(u), std::move(v)), L);
  };
  Cofactors cof;
  auto [uv1, c1] = solve_for(n - 1);  // a^(2d-1)
  auto [uv2, c2] = solve_for(0);      // b^(2d-1)
  cof.u1 = std::move(uv1.first);
  cof.v1 = std::move(uv1.second);
  cof.c1 = c1;
  cof.u2 = std::move(uv2.first);
  cof.v2 = std::move(uv2.second);
  cof.c2 = c2;
  cof_ = std::move(cof);
  return *cof_;
}

std::string RationalMapP1::str() const {
  if (is_polynomial()) {
    Poly p = num_ / den_[0];
    return p.str();
  }
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

PlaceSet bad_places(const RationalMapP1& f) {
  PlaceSet out;
  out.insert(Place::archimedean());
  auto add_primes_of_int = [&](const Int& n) {
    if (n == 0) return;
    Int m = n < 0 ? Int(-n) : n;
    if (m == 1) return;
    for (auto& [p, e] : factor_integer(m)) out.insert(Place::finite(p));
  };
  // denominators of the given coefficients
  for (const Rat& a : f.num().coeffs()) add_primes_of_int(Int(a.get_den()));
  for (const Rat& a : f.den().coeffs()) add_primes_of_int(Int(a.get_den()));
  // leading coefficients of the defining polynomials
  if (!f.num().is_zero()) add_primes_of_int(Int(f.num().lead().get_num()));
  if (!f.den().is_zero()) add_primes_of_int(Int(f.den().lead().get_num()));
  // resultant of the homogeneous lift
  add_primes_of_int(f.lift_resultant());
  return out;
}

namespace {

double log_int(const Int& n) { return n == 0 ? 0.0 : log_abs(n); }

double max_coeff_log(const std::vector<Int>& v) {
  double m = 0;
  bool any = false;
  for (const Int& c : v)
    if (c != 0) {
      m = any ? std::max(m, log_abs(c)) : log_abs(c);
      any = true;
    }
  return any ? m : 0.0;
}

size_t nonzero_count(const std::vector<Int>& v) {
  size_t n = 0;
  for (const Int& c : v)
    if (c != 0) ++n;
  return n;
}

// log of archimedean upper Nullstellensatz constant: max over the two forms
// of (#terms) * max|coeff|.
double log_upper_const(const RationalMapP1& f) {
  double cn = std::log(static_cast<double>(std::max<size_t>(1, nonzero_count(f.lift_num())))) +
              max_coeff_log(f.lift_num());
  double cd = std::log(static_cast<double>(std::max<size_t>(1, nonzero_count(f.lift_den())))) +
              max_coeff_log(f.lift_den());
  return std::max(cn, cd);
}

// log of archimedean lower constant C' (>= is guaranteed):
//   max(|N|,|D|) >= C' ||(a,b)||^d on the unit sup-sphere.
double log_lower_const(const RationalMapP1& f) {
  const auto& cof = f.cofactors();
  auto bound_one = [&](const std::vector<Int>& u, const std::vector<Int>& v, const Int& c) {
    double H = std::max(max_coeff_log(u), max_coeff_log(v));
    size_t terms = nonzero_count(u) * std::max<size_t>(1, nonzero_count(f.lift_num())) +
                   nonzero_count(v) * std::max<size_t>(1, nonzero_count(f.lift_den()));
    return log_int(c) - (H + std::log(static_cast<double>(std::max<size_t>(1, terms))));
  };
  return std::min(bound_one(cof.u1, cof.v1, cof.c1), bound_one(cof.u2, cof.v2, cof.c2));
}

}  // namespace

HeightBoundC height_bound(const RationalMapP1& f) {
  if (f.degree() < 2) throw DegreeOne("height_bound requires degree >= 2");
  if (f.hbc_) return *f.hbc_;
  HeightBoundC out;
  out.c_plus = log_upper_const(f);
  // lower: h(f(x)) >= d h(x) - c_minus via the cofactor identities; the
  // resultant's finite places cancel by the product formula, and cofactor
  // denominators vanish (integer cofactors), leaving the archimedean term.
  out.c_minus = std::max(0.0, -log_lower_const(f));
  // seeded empirical stress-check of the displayed inequality
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  auto rnd = [&]() {
    long num = static_cast<long>(rng() % 199) - 99;
    long den = static_cast<long>(rng() % 98) + 1;
    return Rat(num, den);
  };
  double C = out.bound() + 1e-9;
  for (int i = 0; i < 1000; ++i) {
    Rat x = rnd();
    P1Point y = f.eval(P1Point::of(x));
    double hy = y.infinite ? 0.0 : weil_height(y.value).total();
    double hx = weil_height(x).total();
    if (std::fabs(hy - f.degree() * hx) > C + 1e-6)
      throw std::logic_error("height_bound: empirical check failed");
  }
  f.hbc_ = out;
  return out;
}

PreperiodicCertificate is_preperiodic_p1(const RationalMapP1& f, const P1Point& x) {
  if (f.degree() < 2) throw DegreeOne("is_preperiodic_p1 requires degree >= 2");
  double B = height_bound(f).bound() / (f.degree() - 1) + 1.0;
  std::map<P1Point, long> seen;
  P1Point cur = x;
  long n = 0;
  while (true) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      return PreperiodicCertificate{true, it->second, n - it->second};
    }
    double h = cur.infinite ? 0.0 : weil_height(cur.value).total();
    if (h > B) return PreperiodicCertificate{false, 0, 0};
    seen.emplace(cur, n);
    cur = f.eval(cur);
    ++n;
    if (!cur.infinite && bit_size(cur.value) > kBitBudget)
      return PreperiodicCertificate{false, 0, 0};  // far past the height cutoff
  }
}

namespace {

// --- archimedean Green value of the lift at integer pair (a0, b0) ---

double arch_pair_log_norm(const Int& a, const Int& b, double* ra, double* rb) {
  // returns log max(|a|,|b|) and the normalized doubles
  signed long ea = 0, eb = 0;
  double ma = a == 0 ? 0.0 : mpz_get_d_2exp(&ea, a.get_mpz_t());
  double mb = b == 0 ? 0.0 : mpz_get_d_2exp(&eb, b.get_mpz_t());
  long e = std::max(a == 0 ? LONG_MIN : ea, b == 0 ? LONG_MIN : eb);
  double la = a == 0 ? 0.0 : std::ldexp(ma, static_cast<int>(ea - e));
  double lb = b == 0 ? 0.0 : std::ldexp(mb, static_cast<int>(eb - e));
  *ra = la;
  *rb = lb;
  double m = std::max(std::fabs(la), std::fabs(lb));
  *ra /= m;
  *rb /= m;
  return std::log(m) + static_cast<double>(e) * M_LN2;
}

struct ArchGreen {
  double value;
  double err;
};

ArchGreen green_arch_pair(const RationalMapP1& f, const Int& a0, const Int& b0, double tol) {
  int d = f.degree();
  double M = std::max(log_upper_const(f), -log_lower_const(f)) + 1.0;
  int K = 4;
  while (std::pow(static_cast<double>(d), -K) * M * d / (d - 1) > tol / 2 && K < 600) ++K;
  double a, b;
  double acc = arch_pair_log_norm(a0, b0, &a, &b);
  double scale = 1.0;
  for (int k = 0; k < K; ++k) {
    double A = eval_form_double(f.lift_num(), a, b);
    double B = eval_form_double(f.lift_den(), a, b);
    double m = std::max(std::fabs(A), std::fabs(B));
    if (m == 0.0) throw std::logic_error("green_arch_pair: degenerate step");
    scale /= d;
    acc += scale * std::log(m);
    a = A / m;
    b = B / m;
  }
  double tail = std::pow(static_cast<double>(d), -K) * M * d / (d - 1);
  double round_err = (K + 4) * 1e-14 * (std::fabs(acc) + 1.0);
  return ArchGreen{acc, tail + round_err};
}

// --- finite-place Green value of the lift at coprime integer pair ---

struct FinGreen {
  Rat exponent;  // coefficient of log p
  double err;    // tail bound (absolute, in nats)
};

FinGreen green_padic_pair(const RationalMapP1& f, const Int& a0, const Int& b0, const Int& p,
                          double tol) {
  int d = f.degree();
  const auto& cof = f.cofactors();
  long e1 = cof.c1 == 0 ? 0 : ord_p(cof.c1, p);
  long e2 = cof.c2 == 0 ? 0 : ord_p(cof.c2, p);
  long ebound = std::max(e1, e2);  // min(ord N, ord D) <= ebound on coprime pairs
  if (ebound == 0) return FinGreen{Rat(0), 0.0};
  double logp = log_abs(p);
  int K = 1;
  while (std::pow(static_cast<double>(d), -K) * static_cast<double>(ebound) * logp * d / (d - 1) >
             tol / 2 &&
         K < 400)
    ++K;
  int digits = static_cast<int>((K + 2) * (ebound + 1) + 16);
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      Int pM = int_pow(p, static_cast<unsigned long>(digits));
      Int a = a0 % pM, b = b0 % pM;
      if (a < 0) a += pM;
      if (b < 0) b += pM;
      int effective = digits;
      Rat S(0);
      Rat dpow(1);
      for (int k = 1; k <= K; ++k) {
        Int A = eval_form_int(f.lift_num(), a, b) % pM;
        Int B = eval_form_int(f.lift_den(), a, b) % pM;
        if (A < 0) A += pM;
        if (B < 0) B += pM;
        long oA = A == 0 ? effective : std::min<long>(ord_p(A, p), effective);
        long oB = B == 0 ? effective : std::min<long>(ord_p(B, p), effective);
        long g = std::min(oA, oB);
        if (g >= effective) throw PrecisionExhausted("padic pair iteration");
        if (g > ebound)
          throw std::logic_error("padic pair gcd exceeded cofactor bound");
        if (g > 0) {
          Int pg = int_pow(p, static_cast<unsigned long>(g));
          A /= pg;
          B /= pg;
          effective -= static_cast<int>(g);
          if (effective <= static_cast<int>(ebound) + 1)
            throw PrecisionExhausted("padic pair iteration");
        }
        dpow *= d;
        S += Rat(g) / dpow;
        a = A;
        b = B;
      }
      double tail =
          std::pow(static_cast<double>(d), -K) * static_cast<double>(ebound) * logp / (d - 1);
      return FinGreen{-S, tail};
    } catch (const PrecisionExhausted&) {
      digits *= 2;
    }
  }
  throw PrecisionExhausted("green_padic_pair: retries exhausted");
}

void point_to_pair(const P1Point& x, Int* a, Int* b) {
  if (x.infinite) {
    *a = 1;
    *b = 0;
  } else {
    Rat v = x.value;
    v.canonicalize();
    *a = Int(v.get_num());
    *b = Int(v.get_den());
  }
}

}  // namespace

LocalLog green_p1(const RationalMapP1& f, const P1Point& x, const Place& v, double tol) {
  if (f.degree() < 2) throw DegreeOne("green_p1 requires degree >= 2");
  Int a, b;
  point_to_pair(x, &a, &b);
  if (v.is_archimedean()) {
    // lambda(x) = G((x,1)) = G((a,b)) - log|b|
    ArchGreen g = green_arch_pair(f, a, b, tol);
    double shift = b == 0 ? 0.0 : log_abs(b);
    return LocalLog{v, Rat(0), g.value - shift, g.err + (b == 0 ? 0.0 : 4e-16 * (shift + 1))};
  }
  const Int& p = v.prime();
  FinGreen g = green_padic_pair(f, a, b, p, tol);
  Rat e = g.exponent;
  if (b != 0 && b % p == 0) e += Rat(ord_p(b, p));  // -log|q0|_p part
  LocalLog out{v, e, 0.0, g.err};
  return out;
}

HeightValue canonical_height_p1(const RationalMapP1& f, const P1Point& x, double tol) {
  if (f.degree() < 2) throw DegreeOne("canonical_height_p1 requires degree >= 2");
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  PreperiodicCertificate cert = is_preperiodic_p1(f, x);
  if (cert.preperiodic) return HeightValue::zero();

  Int a, b;
  point_to_pair(x, &a, &b);

  // finite places: only primes dividing the cofactor constants can pick up
  // corrections; primes dividing the denominator contribute the exact
  // initial term.
  PlaceSet finite_places;
  const auto& cof = f.cofactors();
  Int cc = cof.c1 * cof.c2;
  if (cc < 0) cc = -cc;
  if (cc > 1)
    for (auto& [p, e] : factor_integer(cc)) finite_places.insert(Place::finite(p));
  if (b != 0 && b != 1)
    for (auto& [p, e] : factor_integer(b < 0 ? Int(-b) : b)) finite_places.insert(Place::finite(p));

  HeightValue h;
  size_t nplaces = finite_places.size() + 1;
  double tol_each = tol / static_cast<double>(nplaces);
  for (const Place& v : finite_places) {
    LocalLog l = green_p1(f, x, v, tol_each);
    h.add_finite(v.prime(), l.exact);
    h.trunc_err += l.err;
  }
  ArchGreen g = green_arch_pair(f, a, b, tol_each);
  double shift = b == 0 ? 0.0 : log_abs(b);
  h.arch = g.value - shift;
  h.arch_err = g.err + (b == 0 ? 0.0 : 4e-16 * (shift + 1));
  h.exact_zero = false;
  return h;
}

HeightValue canonical_height_p1(const RationalMapP1& f, const AlgebraicNumber& alpha, double tol) {
  if (f.degree() < 2) throw DegreeOne("canonical_height_p1 requires degree >= 2");
  if (alpha.degree() == 1)
    return canonical_height_p1(f, -alpha.minpoly[0] / alpha.minpoly[1], tol);
  double C = height_bound(f).bound();
  int d = f.degree();
  unsigned N = 0;
  double denom = d - 1;
  while (C / (std::pow(static_cast<double>(d), static_cast<double>(N)) * denom) > tol) {
    ++N;
    if (N > 40) throw PrecisionExhausted("algebraic canonical height: too many iterations");
  }
  if (N == 0) return height_algebraic(alpha);

  // iterate value = num/den in Q[t]/(m)
  const Poly& m = alpha.minpoly;
  if (m.degree() > 40) throw DegreeBudgetExceeded("algebraic point degree too large");
  auto reduce = [&](const Poly& p) { return p.divmod(m).second; };
  auto inv_mod = [&](Poly u) {
    // extended Euclid in Q[t] modulo m (m irreducible)
    Poly r0 = m, r1 = reduce(u);
    Poly s0, s1 = Poly::constant(Rat(1));
    while (!r1.is_zero()) {
      auto [q, r2] = r0.divmod(r1);
      Poly s2 = s0 - q * s1;
      r0 = r1;
      r1 = r2;
      s0 = s1;
      s1 = s2;
    }
    if (r0.degree() != 0) throw PrecisionExhausted("conjugate orbit meets a pole");
    return reduce(s0 / r0[0]);
  };
  Poly va = reduce(Poly::x()), vb = Poly::constant(Rat(1));
  for (unsigned k = 0; k < N; ++k) {
    Poly A, B;
    {
      // evaluate the lift forms at (va, vb) modulo m
      const auto& ln = f.lift_num();
      const auto& ld = f.lift_den();
      int dd = f.degree();
      std::vector<Poly> apow(dd + 1), bpow(dd + 1);
      apow[0] = Poly::constant(Rat(1));
      bpow[0] = Poly::constant(Rat(1));
      for (int i = 1; i <= dd; ++i) {
        apow[i] = reduce(apow[i - 1] * va);
        bpow[i] = reduce(bpow[i - 1] * vb);
      }
      for (int i = 0; i <= dd; ++i) {
        if (ln[i] != 0) A = A + reduce(apow[i] * bpow[dd - i]) * Rat(ln[i]);
        if (ld[i] != 0) B = B + reduce(apow[i] * bpow[dd - i]) * Rat(ld[i]);
      }
      A = reduce(A);
      B = reduce(B);
    }
    va = A;
    vb = B;
  }
  // value v = va / vb in the field; its characteristic polynomial via the
  // multiplication matrix on the power basis.
  Poly val = reduce(va * inv_mod(vb));
  int n = m.degree();
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
  Poly cur = val;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= cur.degree(); ++i) M[i][j] = cur[i];
    cur = reduce(cur * Poly::x());
  }
  // char poly of the multiplication matrix via Faddeev-LeVerrier
  std::vector<Rat> charc(n + 1, Rat(0));
  {
    charc[n] = 1;
    std::vector<std::vector<Rat>> B(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) B[i][i] = 1;
    for (int k = 1; k <= n; ++k) {
      std::vector<std::vector<Rat>> C(n, std::vector<Rat>(n, Rat(0)));
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          if (M[i][l] == 0) continue;
          for (int j = 0; j < n; ++j)
            if (B[l][j] != 0) C[i][j] += M[i][l] * B[l][j];
        }
      Rat tr(0);
      for (int i = 0; i < n; ++i) tr += C[i][i];
      Rat c = -tr / Rat(k);
      charc[n - k] = c;
      for (int i = 0; i < n; ++i) C[i][i] += c;
      B = std::move(C);
    }
  }
  Poly chi{std::vector<Rat>(charc)};
  Poly mp = squarefree_part(chi).primitive();
  HeightValue h = height_algebraic(AlgebraicNumber{mp, 0});
  Rat scale(1);
  scale /= rat_pow(Rat(d), N);
  HeightValue out = h * scale;
  out.trunc_err += tol;
  return out;
}

SplitEndo::SplitEndo(std::vector<RationalMapP1> c, std::vector<int> p)
    : comps(std::move(c)), perm(std::move(p)) {
  if (comps.empty()) throw std::invalid_argument("split endomorphism needs components");
  if (perm.empty()) {
    perm.resize(comps.size());
    for (size_t i = 0; i < comps.size(); ++i) perm[i] = static_cast<int>(i);
  }
  if (perm.size() != comps.size()) throw std::invalid_argument("perm size mismatch");
}

bool SplitEndo::identity_perm() const {
  for (size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<P1Point> SplitEndo::eval(const std::vector<P1Point>& x) const {
  if (x.size() != comps.size()) throw std::invalid_argument("point arity mismatch");
  std::vector<P1Point> out(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) out[i] = comps[i].eval(x[perm[i]]);
  return out;
}

SplitEndo SplitEndo::compose(const SplitEndo& inner) const {
  if (comps.size() != inner.comps.size()) throw std::invalid_argument("arity mismatch");
  // (this o inner)(x)_i = f_i( inner(x)_{perm[i]} ) = f_i( g_{perm[i]}( x_{inner.perm[perm[i]]} ) )
  std::vector<RationalMapP1> c;
  std::vector<int> p(comps.size());
  c.reserve(comps.size());
  for (size_t i = 0; i < comps.size(); ++i) {
    c.push_back(comps[i].compose(inner.comps[perm[i]]));
    p[i] = inner.perm[perm[i]];
  }
  return SplitEndo(std::move(c), std::move(p));
}

bool SplitEndo::operator==(const SplitEndo& o) const {
  return perm == o.perm && comps == o.comps;
}

HeightValue split_height(const SplitEndo& F, const std::vector<P1Point>& X, double tol) {
  if (!F.identity_perm())
    throw std::invalid_argument("split_height: non-identity permutation");
  if (X.size() != F.comps.size()) throw std::invalid_argument("point arity mismatch");
  HeightValue h;
  bool all_zero = true;
  double tol_each = tol / static_cast<double>(F.comps.size());
  for (size_t i = 0; i < F.comps.size(); ++i) {
    HeightValue hi = canonical_height_p1(F.comps[i], X[i], tol_each);
    if (!hi.exact_zero) all_zero = false;
    h += hi;
  }
  h.exact_zero = all_zero;
  return h;
}

bool is_preperiodic_split(const SplitEndo& F, const std::vector<P1Point>& X) {
  if (F.identity_perm()) {
    for (size_t i = 0; i < F.comps.size(); ++i)
      if (!is_preperiodic_p1(F.comps[i], X[i]).preperiodic) return false;
    return true;
  }
  // reduce to the identity-perm power: order of the permutation
  SplitEndo Fk = F;
  int k = 1;
  while (!Fk.identity_perm()) {
    Fk = F.compose(Fk);
    ++k;
    if (k > 64) throw DegreeBudgetExceeded("permutation order too large");
  }
  return is_preperiodic_split(Fk, X);
}

}  // namespace arithdyn
