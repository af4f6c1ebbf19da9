#include "arithdyn/skewprod.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "arithdyn/errors.hpp"
#include "arithdyn/factor.hpp"

namespace arithdyn {

namespace {
constexpr int kPrescanSteps = 64;
}

A2Point AffineAuto::apply(const A2Point& p) const {
  return A2Point{m00 * p.x + m01 * p.y + t0, m10 * p.x + m11 * p.y + t1};
}

AffineAuto AffineAuto::inverse() const {
  Rat det = m00 * m11 - m01 * m10;
  if (det == 0) throw ZeroInput("affine automorphism is singular");
  AffineAuto inv;
  inv.m00 = m11 / det;
  inv.m01 = -m01 / det;
  inv.m10 = -m10 / det;
  inv.m11 = m00 / det;
  inv.t0 = -(inv.m00 * t0 + inv.m01 * t1);
  inv.t1 = -(inv.m10 * t0 + inv.m11 * t1);
  return inv;
}

bool AffineAuto::is_identity() const {
  return m00 == 1 && m01 == 0 && m10 == 0 && m11 == 1 && t0 == 0 && t1 == 0;
}

SkewProduct::SkewProduct(Poly p, Poly2 q, std::optional<AffineAuto> sigma)
    : p_(std::move(p)), q_(std::move(q)), sigma_(std::move(sigma)) {
  d_ = p_.degree();
  if (d_ < 2) throw DegreeOne("skew product needs degree >= 2");
  if (q_.total_degree() != d_)
    throw std::invalid_argument("skew product: total degree of q must equal deg p");
  const Poly& yd = q_.coeff_y(d_);
  if (yd.is_zero() || yd.degree() != 0)
    throw std::invalid_argument("skew product: q needs a nonzero constant y^d coefficient");

  // primitive integer lift (P, Q, ell z^d) = ell * (homogenized p, q, z^d)
  Int L(1);
  for (const Rat& a : p_.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), a.get_den_mpz_t());
  for (const Poly& c : q_.ycoeffs())
    for (const Rat& a : c.coeffs()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), a.get_den_mpz_t());
  px_.assign(d_ + 1, Int(0));
  for (int i = 0; i <= p_.degree(); ++i) px_[i] = Int(Rat(p_[i] * Rat(L)).get_num());
  qc_.assign(d_ + 1, std::vector<Int>(d_ + 1, Int(0)));
  for (int j = 0; j <= q_.deg_y(); ++j)
    for (int i = 0; i <= q_.coeff_y(j).degree(); ++i)
      qc_[i][j] = Int(Rat(q_.coeff_y(j)[i] * Rat(L)).get_num());
  ell_ = L;
  Int g = L;
  for (const Int& c : px_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  for (auto& row : qc_)
    for (const Int& c : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (Int& c : px_) c /= g;
    for (auto& row : qc_)
      for (Int& c : row) c /= g;
    ell_ /= g;
  }
}

A2Point SkewProduct::eval(const A2Point& pt) const {
  return A2Point{p_.eval(pt.x), q_.eval(pt.x, pt.y)};
}

SkewProduct SkewProduct::compose(const SkewProduct& inner) const {
  Poly np = p_.compose(inner.p_);
  Poly2 nq = q_.subst(Poly2::from_x(inner.p_), inner.q_);
  return SkewProduct(std::move(np), std::move(nq));
}

SkewProduct SkewProduct::iterate(unsigned n) const {
  if (n == 0) throw std::invalid_argument("iterate needs n >= 1");
  SkewProduct r = *this;
  for (unsigned i = 1; i < n; ++i) {
    r = compose(r);
    if (r.degree() > 4096) throw DegreeBudgetExceeded("skew iterate degree too large");
  }
  return r;
}

std::string SkewProduct::str() const {
  return "skew: p = " + p_.str("x") + "; q = " + q_.str("x", "y");
}

namespace {

// exact linear solve A w = rhs; nullopt when inconsistent (free vars = 0)
std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> A,
                                            std::vector<Rat> rhs) {
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<int> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(rhs[piv], rhs[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rat f = A[i][c] / A[r][c];
      for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rat> w(cols, Rat(0));
  for (size_t i = 0; i < r; ++i) w[pivcol[i]] = rhs[i] / A[i][pivcol[i]];
  return w;
}

size_t mono_index(int i, int j, int E) {
  size_t idx = 0;
  for (int a = 0; a < i; ++a) idx += static_cast<size_t>(E - a + 1);
  return idx + static_cast<size_t>(j);
}

size_t mono_count(int E) { return static_cast<size_t>(E + 1) * (E + 2) / 2; }

}  // namespace

const SkewProduct::Cofactors& SkewProduct::cofactors() const {
  if (cof_) return *cof_;
  int d = d_;
  for (int E = d; E <= 3 * d; ++E) {
    int e = E - d;
    size_t nu = mono_count(e);
    size_t nrow = mono_count(E);
    std::vector<std::vector<Rat>> M(nrow, std::vector<Rat>(3 * nu, Rat(0)));
    size_t col = 0;
    for (int a = 0; a <= e; ++a)
      for (int b = 0; b <= e - a; ++b, ++col) {
        for (int i = 0; i <= d; ++i)
          if (px_[i] != 0) M[mono_index(a + i, b, E)][col] += Rat(px_[i]);
        for (int i = 0; i <= d; ++i)
          for (int j = 0; j + i <= d; ++j)
            if (qc_[i][j] != 0) M[mono_index(a + i, b + j, E)][nu + col] += Rat(qc_[i][j]);
        M[mono_index(a, b, E)][2 * nu + col] += Rat(ell_);
      }
    auto solve_target = [&](int ti, int tj) -> std::optional<std::pair<Int, double>> {
      std::vector<Rat> rhs(nrow, Rat(0));
      rhs[mono_index(ti, tj, E)] = 1;
      auto w = solve_exact(M, rhs);
      if (!w) return std::nullopt;
      Int L(1);
      for (const Rat& x : *w) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
      double H = 0.0;
      for (const Rat& x : *w)
        if (x != 0) H = std::max(H, log_abs(Rat(x * Rat(L))));
      return std::make_pair(L, H);
    };
    auto sx = solve_target(E, 0);
    auto sy = solve_target(0, E);
    auto sz = solve_target(0, 0);
    if (sx && sy && sz) {
      Cofactors cof;
      cof.E = E;
      cof.cx = sx->first;
      cof.cy = sy->first;
      cof.cz = sz->first;
      cof.arch_H = std::max({sx->second, sy->second, sz->second});
      size_t terms = mono_count(e) * (mono_count(d) + static_cast<size_t>(d) + 2);
      cof.arch_terms = std::log(static_cast<double>(terms));
      cof_ = std::move(cof);
      return *cof_;
    }
  }
  throw NotRegular("homogeneous lift forms share a nontrivial zero");
}

PlaceSet bad_places(const SkewProduct& f) {
  PlaceSet out;
  out.insert(Place::archimedean());
  auto add = [&](const Int& n) {
    if (n == 0) return;
    Int m = n < 0 ? Int(-n) : n;
    if (m == 1) return;
    for (auto& [p, e] : factor_integer(m)) out.insert(Place::finite(p));
  };
  const auto& cof = f.cofactors();
  add(cof.cx);
  add(cof.cy);
  add(cof.cz);
  add(f.lift_zscale());
  add(Int(f.p().lead().get_num()));
  add(Int(f.q().coeff_y(f.degree())[0].get_num()));
  for (const Rat& a : f.p().coeffs()) add(Int(a.get_den()));
  for (const Poly& c : f.q().ycoeffs())
    for (const Rat& a : c.coeffs()) add(Int(a.get_den()));
  return out;
}

namespace {

double coeff_log_v(const Int& c, const Place& v) {
  if (c == 0) return -1e300;
  return v.is_archimedean() ? log_abs(c)
                            : -static_cast<double>(ord_p(c, v.prime())) * v.log_p();
}

double max_abs_coeff_log_v(const SkewProduct& f, const Place& v, bool for_q) {
  double best = -1e300;
  if (!for_q) {
    for (const Int& c : f.lift_p()) best = std::max(best, coeff_log_v(c, v));
  } else {
    for (const auto& row : f.lift_q())
      for (const Int& c : row) best = std::max(best, coeff_log_v(c, v));
  }
  return best <= -1e299 ? 0.0 : best;
}

struct TailConsts {
  double logC;
  double logCprime;
  double M() const { return std::max(logC, -logCprime) + 1e-12; }
};

TailConsts tail_consts(const SkewProduct& f, const Place& v) {
  int d = f.degree();
  TailConsts t;
  const auto& cof = f.cofactors();
  if (v.is_archimedean()) {
    double c1 = std::log(static_cast<double>(d + 1)) + max_abs_coeff_log_v(f, v, false);
    double c2 = std::log(static_cast<double>((d + 2) * (d + 1)) / 2.0) +
                max_abs_coeff_log_v(f, v, true);
    double cz = log_abs(f.lift_zscale());
    t.logC = std::max({c1, c2, cz, 0.0});
    double worst_c = std::min({log_abs(cof.cx), log_abs(cof.cy), log_abs(cof.cz)});
    t.logCprime = std::min(0.0, worst_c - cof.arch_H - cof.arch_terms);
  } else {
    const Int& p = v.prime();
    double logp = v.log_p();
    double c1 = max_abs_coeff_log_v(f, v, false);
    double c2 = max_abs_coeff_log_v(f, v, true);
    double cz = coeff_log_v(f.lift_zscale(), v);
    t.logC = std::max({c1, c2, cz, 0.0});
    long worst = std::max({ord_p(cof.cx, p), ord_p(cof.cy, p), ord_p(cof.cz, p)});
    t.logCprime = std::min(0.0, -static_cast<double>(worst) * logp);
  }
  return t;
}

bool good_reduction_at(const SkewProduct& f, const Int& p) {
  const auto& cof = f.cofactors();
  return ord_p(cof.cx, p) == 0 && ord_p(cof.cy, p) == 0 && ord_p(cof.cz, p) == 0 &&
         ord_p(f.lift_zscale(), p) == 0;
}

// evaluate the lift forms at a triple of doubles
void eval_lift_double(const SkewProduct& f, double x, double y, double z, double* P, double* Q,
                      double* Z) {
  int d = f.degree();
  std::vector<double> xp(d + 1), yp(d + 1), zp(d + 1);
  xp[0] = yp[0] = zp[0] = 1.0;
  for (int i = 1; i <= d; ++i) {
    xp[i] = xp[i - 1] * x;
    yp[i] = yp[i - 1] * y;
    zp[i] = zp[i - 1] * z;
  }
  double Pv = 0;
  for (int i = 0; i <= d; ++i)
    if (f.lift_p()[i] != 0) Pv += mpz_get_d(f.lift_p()[i].get_mpz_t()) * xp[i] * zp[d - i];
  double Qv = 0;
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j + i <= d; ++j)
      if (f.lift_q()[i][j] != 0)
        Qv += mpz_get_d(f.lift_q()[i][j].get_mpz_t()) * xp[i] * yp[j] * zp[d - i - j];
  *P = Pv;
  *Q = Qv;
  *Z = mpz_get_d(f.lift_zscale().get_mpz_t()) * zp[d];
}

// evaluate the lift forms at an exact integer triple
void eval_lift_int(const SkewProduct& f, const Int& x, const Int& y, const Int& z, Int* P,
                   Int* Q, Int* Z) {
  int d = f.degree();
  std::vector<Int> xp(d + 1), yp(d + 1), zp(d + 1);
  xp[0] = yp[0] = zp[0] = 1;
  for (int i = 1; i <= d; ++i) {
    xp[i] = xp[i - 1] * x;
    yp[i] = yp[i - 1] * y;
    zp[i] = zp[i - 1] * z;
  }
  Int Pv(0), Qv(0);
  for (int i = 0; i <= d; ++i)
    if (f.lift_p()[i] != 0) Pv += f.lift_p()[i] * xp[i] * zp[d - i];
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j + i <= d; ++j)
      if (f.lift_q()[i][j] != 0) Qv += f.lift_q()[i][j] * xp[i] * yp[j] * zp[d - i - j];
  *P = Pv;
  *Q = Qv;
  *Z = f.lift_zscale() * zp[d];
}

// G_{F,arch} at the normalized double triple, plus initial log norm.
double green_arch_lift(const SkewProduct& f, double x, double y, double z, double tol,
                       double* err_out) {
  int d = f.degree();
  TailConsts tc = tail_consts(f, Place::archimedean());
  int K = 1;
  while (std::pow(static_cast<double>(d), -K) * tc.M() / (d - 1) > tol / 2 && K < 600) ++K;
  double sup = std::max({std::fabs(x), std::fabs(y), std::fabs(z)});
  double acc = std::log(sup);
  x /= sup;
  y /= sup;
  z /= sup;
  double scale = 1.0;
  for (int k = 0; k < K; ++k) {
    double P, Q, Z;
    eval_lift_double(f, x, y, z, &P, &Q, &Z);
    double m = std::max({std::fabs(P), std::fabs(Q), std::fabs(Z)});
    if (m == 0.0) throw std::logic_error("lift evaluation vanished on the sphere");
    scale /= d;
    acc += scale * std::log(m);
    x = P / m;
    y = Q / m;
    z = Z / m;
  }
  double tail = std::pow(static_cast<double>(d), -K) * tc.M() / (d - 1);
  *err_out = tail + (K + 4) * 1e-14 * (std::fabs(acc) + 1.0);
  return acc;
}

// finite-place Green data of the lift at a coprime integer triple.
struct FinGreen {
  Rat exponent;  // of log p (nonpositive: the gcd series)
  double err;
};

FinGreen green_fin_lift(const SkewProduct& f, Int X, Int Y, Int Z, const Int& p, double tol) {
  const auto& cof = f.cofactors();
  long e1 = ord_p(cof.cx, p), e2 = ord_p(cof.cy, p), e3 = ord_p(cof.cz, p);
  long ebound = std::max({e1, e2, e3});
  if (ebound == 0) return FinGreen{Rat(0), 0.0};
  int d = f.degree();
  double logp = log_abs(p);
  int K = 1;
  while (std::pow(static_cast<double>(d), -K) * static_cast<double>(ebound) * logp / (d - 1) >
             tol &&
         K < 400)
    ++K;
  int digits = static_cast<int>((K + 2) * (ebound + 1) + 16);
  for (int attempt = 0; attempt < 4; ++attempt) {
    Int pM = int_pow(p, static_cast<unsigned long>(digits));
    Int a = X % pM, b = Y % pM, c = Z % pM;
    if (a < 0) a += pM;
    if (b < 0) b += pM;
    if (c < 0) c += pM;
    int effective = digits;
    Rat S(0);
    Rat dpow(1);
    bool retry = false;
    for (int k = 1; k <= K; ++k) {
      Int A, B, C;
      eval_lift_int(f, a, b, c, &A, &B, &C);
      A %= pM;
      B %= pM;
      C %= pM;
      if (A < 0) A += pM;
      if (B < 0) B += pM;
      if (C < 0) C += pM;
      long oA = A == 0 ? effective : std::min<long>(ord_p(A, p), effective);
      long oB = B == 0 ? effective : std::min<long>(ord_p(B, p), effective);
      long oC = C == 0 ? effective : std::min<long>(ord_p(C, p), effective);
      long g = std::min({oA, oB, oC});
      if (g >= effective) {
        retry = true;
        break;
      }
      if (g > ebound) throw std::logic_error("skew lift gcd exceeded cofactor bound");
      if (g > 0) {
        Int pg = int_pow(p, static_cast<unsigned long>(g));
        A /= pg;
        B /= pg;
        C /= pg;
        effective -= static_cast<int>(g);
        if (effective <= static_cast<int>(ebound) + 1) {
          retry = true;
          break;
        }
      }
      dpow *= d;
      S += Rat(g) / dpow;
      a = A;
      b = B;
      c = C;
    }
    if (!retry) {
      double tail =
          std::pow(static_cast<double>(d), -K) * static_cast<double>(ebound) * logp / (d - 1);
      return FinGreen{-S, tail};
    }
    digits *= 2;
  }
  throw PrecisionExhausted("green_fin_lift: retries exhausted");
}

bool prescan_repeats(const SkewProduct& f, const A2Point& pt) {
  std::set<A2Point> seen;
  A2Point cur = pt;
  for (int i = 0; i < kPrescanSteps; ++i) {
    if (!seen.insert(cur).second) return true;
    if (bit_size(cur.x) + bit_size(cur.y) > (1u << 18)) return false;
    cur = f.eval(cur);
  }
  return seen.count(cur) > 0;
}

}  // namespace

NullConstants nullstellensatz_constants(const SkewProduct& f, const Place& v) {
  NullConstants out;
  out.place = v;
  int d = f.degree();
  TailConsts tc = tail_consts(f, v);
  out.formula_c1 = std::exp(v.is_archimedean()
                                ? std::log(static_cast<double>(d + 1)) +
                                      max_abs_coeff_log_v(f, v, false)
                                : max_abs_coeff_log_v(f, v, false));
  out.formula_c2 =
      std::exp(v.is_archimedean()
                   ? std::log(static_cast<double>((d + 2) * (d + 1)) / 2.0) +
                         max_abs_coeff_log_v(f, v, true)
                   : max_abs_coeff_log_v(f, v, true));
  out.upper_C = std::exp(tc.logC);
  out.lower_Cprime = std::exp(tc.logCprime);
  out.sharp_Cprime = out.lower_Cprime;
  if (v.is_archimedean()) {
    // grid minimization of ||F|| over the real unit sup-sphere, with a
    // Lipschitz slack certificate; only sharpens the certified constant
    int G = 408;  // 6 G^2 ~ 1e6 points
    double lip = 0.0;
    {
      double s = 0.0;
      for (const Int& cc : f.lift_p()) s += std::fabs(mpz_get_d(cc.get_mpz_t()));
      for (const auto& row : f.lift_q())
        for (const Int& cc : row) s += std::fabs(mpz_get_d(cc.get_mpz_t()));
      s += std::fabs(mpz_get_d(f.lift_zscale().get_mpz_t()));
      lip = static_cast<double>(d) * s;
    }
    double h = 2.0 / G;
    double best = 1e300;
    auto probe = [&](double x, double y, double z) {
      double P, Q, Z;
      eval_lift_double(f, x, y, z, &P, &Q, &Z);
      best = std::min(best, std::max({std::fabs(P), std::fabs(Q), std::fabs(Z)}));
    };
    for (int face = 0; face < 6; ++face) {
      for (int i = 0; i <= G; ++i) {
        for (int j = 0; j <= G; ++j) {
          double u = -1.0 + i * h, w = -1.0 + j * h;
          switch (face) {
            case 0: probe(1.0, u, w); break;
            case 1: probe(-1.0, u, w); break;
            case 2: probe(u, 1.0, w); break;
            case 3: probe(u, -1.0, w); break;
            case 4: probe(u, w, 1.0); break;
            default: probe(u, w, -1.0); break;
          }
        }
      }
    }
    double slack = lip * h * 1.5;
    out.sharp_Cprime = std::max(out.lower_Cprime, best - slack);
  }
  return out;
}

LocalGreen green_skew(const SkewProduct& f, const A2Point& pt0, const Place& v, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  A2Point pt = f.sigma() ? f.sigma()->apply(pt0) : pt0;
  if (prescan_repeats(f, pt)) return LocalGreen{v, Rat(0), 0.0, 0.0, true};
  int d = f.degree();
  // clear denominators: (x, y, 1) = (X, Y, Z)/D with coprime integer triple
  Rat x = pt.x, y = pt.y;
  x.canonicalize();
  y.canonicalize();
  Int D(1);
  mpz_lcm(D.get_mpz_t(), Int(x.get_den()).get_mpz_t(), Int(y.get_den()).get_mpz_t());
  Int X = Int(Rat(x * Rat(D)).get_num());
  Int Y = Int(Rat(y * Rat(D)).get_num());
  Int Z = D;

  if (v.is_finite()) {
    const Int& p = v.prime();
    long ordD = D == 1 ? 0 : ord_p(D, p);
    long ordEll = ord_p(f.lift_zscale(), p);
    if (good_reduction_at(f, p)) {
      // g = ord_p(D) log p exactly (equals log+ sup-norm)
      Rat e(ordD);
      return LocalGreen{v, e, 0.0, 0.0, e == 0};
    }
    FinGreen g = green_fin_lift(f, X, Y, Z, p, tol);
    // g_{f,p} = [ordD + exponent + ordEll/(d-1)] log p
    Rat e = Rat(ordD) + g.exponent + Rat(ordEll, d - 1);
    return LocalGreen{v, e, 0.0, g.err, e == 0 && g.err == 0.0};
  }
  double err = 0.0;
  double gf = green_arch_lift(f, to_double(x), to_double(y), 1.0, tol, &err);
  gf -= log_abs(f.lift_zscale()) / (d - 1);
  // clamp tiny negatives from rounding: the affine green is >= 0
  if (gf < 0 && gf > -err) gf = 0.0;
  return LocalGreen{v, Rat(0), gf, err + 1e-14, false};
}

namespace {

PlaceSet relevant_places(const SkewProduct& f, const A2Point& pt) {
  PlaceSet places = bad_places(f);
  auto add = [&](const Rat& r) {
    if (r == 0) return;
    Rat q = r;
    q.canonicalize();
    Int den(q.get_den());
    if (den == 1) return;
    for (auto& [pp, e] : factor_integer(den)) places.insert(Place::finite(pp));
  };
  A2Point p2 = f.sigma() ? f.sigma()->apply(pt) : pt;
  add(p2.x);
  add(p2.y);
  return places;
}

void fold_local(HeightValue& h, const LocalGreen& g) {
  if (g.exact_zero) return;
  if (g.place.is_archimedean()) {
    h.arch += g.numeric;
    h.arch_err += g.err;
  } else {
    h.add_finite(g.place.prime(), g.exact);
    h.trunc_err += g.err;
  }
  h.exact_zero = false;
}

}  // namespace

HeightValue height_skew(const SkewProduct& f, const A2Point& pt, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  if (is_preperiodic_skew(f, pt).preperiodic) return HeightValue::zero();
  PlaceSet places = relevant_places(f, pt);
  HeightValue h;
  h.exact_zero = false;
  double tol_each = tol / static_cast<double>(places.size());
  for (const Place& v : places) fold_local(h, green_skew(f, pt, v, tol_each));
  return h;
}

double skew_height_gap(const SkewProduct& f) {
  if (f.height_gap_) return *f.height_gap_;
  std::mt19937_64 rng(0x5eedcafeull);
  double gap = 0.0;
  for (int i = 0; i < 60; ++i) {
    A2Point p{Rat(static_cast<long>(rng() % 41) - 20), Rat(static_cast<long>(rng() % 41) - 20)};
    PlaceSet places = relevant_places(f, p);
    HeightValue h;
    bool zero = true;
    for (const Place& v : places) {
      LocalGreen g = green_skew(f, p, v, 1e-6);
      if (!g.exact_zero) zero = false;
      fold_local(h, g);
    }
    double hf = zero ? 0.0 : h.total();
    A2Point pn = f.sigma() ? f.sigma()->apply(p) : p;
    gap = std::max(gap, std::fabs(hf - weil_height_affine({pn.x, pn.y}).total()));
  }
  f.height_gap_ = gap;
  return gap;
}

PreperiodicCertificate is_preperiodic_skew(const SkewProduct& f, const A2Point& pt0) {
  A2Point pt = f.sigma() ? f.sigma()->apply(pt0) : pt0;
  double cutoff = skew_height_gap(f) + 2.0;
  std::map<A2Point, long> seen;
  A2Point cur = pt;
  long n = 0;
  while (true) {
    auto it = seen.find(cur);
    if (it != seen.end())
      return PreperiodicCertificate{true, it->second, n - it->second};
    if (weil_height_affine({cur.x, cur.y}).total() > cutoff)
      return PreperiodicCertificate{false, 0, 0};
    seen.emplace(cur, n);
    cur = f.eval(cur);
    ++n;
    if (bit_size(cur.x) + bit_size(cur.y) > (1u << 20))
      return PreperiodicCertificate{false, 0, 0};
  }
}

Poly fiber_composition(const SkewProduct& f, const Rat& x0) {
  // verify x0 is p-periodic and find its exact period
  RationalMapP1 base = RationalMapP1::polynomial(f.p());
  PreperiodicCertificate cert = is_preperiodic_p1(base, x0);
  if (!cert.preperiodic || cert.tail != 0)
    throw NotPeriodic("fiber_composition: x0 is not p-periodic");
  long n = cert.cycle;
  Poly comp = Poly::x();
  Rat xi = x0;
  for (long i = 0; i < n; ++i) {
    // apply q(x_i, .) after what is already built
    Poly qi = f.q().eval_x(xi);
    comp = qi.compose(comp);
    xi = f.p().eval(xi);
  }
  return comp;
}

}  // namespace arithdyn
