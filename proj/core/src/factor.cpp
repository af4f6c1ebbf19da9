#include "arithdyn/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

// ---------- arithmetic in F_p[x], p a small odd prime ----------

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using FpPoly = std::vector<u64>;  // lowest degree first, trimmed

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { u64 s = a + b; return s >= p ? s - p : s; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((u128)a * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a % p, p - 2); }
};

void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int fp_deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }

FpPoly fp_mul(const Fp& F, const FpPoly& a, const FpPoly& b) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  fp_trim(r);
  return r;
}

FpPoly fp_rem(const Fp& F, FpPoly a, const FpPoly& b) {
  int db = fp_deg(b);
  u64 binv = F.inv(b.back());
  while (fp_deg(a) >= db) {
    u64 c = F.mul(a.back(), binv);
    int k = fp_deg(a) - db;
    for (int i = 0; i <= db; ++i) a[i + k] = F.sub(a[i + k], F.mul(c, b[i]));
    fp_trim(a);
  }
  return a;
}

FpPoly fp_divexact(const Fp& F, FpPoly a, const FpPoly& b) {
  int db = fp_deg(b);
  u64 binv = F.inv(b.back());
  FpPoly q(std::max(0, fp_deg(a) - db + 1), 0);
  while (fp_deg(a) >= db) {
    u64 c = F.mul(a.back(), binv);
    int k = fp_deg(a) - db;
    q[k] = c;
    for (int i = 0; i <= db; ++i) a[i + k] = F.sub(a[i + k], F.mul(c, b[i]));
    fp_trim(a);
  }
  fp_trim(q);
  return q;
}

FpPoly fp_gcd(const Fp& F, FpPoly a, FpPoly b) {
  while (!b.empty()) {
    FpPoly r = fp_rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    u64 inv = F.inv(a.back());
    for (u64& c : a) c = F.mul(c, inv);
  }
  return a;
}

FpPoly fp_monic(const Fp& F, FpPoly a) {
  if (a.empty()) return a;
  u64 inv = F.inv(a.back());
  for (u64& c : a) c = F.mul(c, inv);
  return a;
}

FpPoly fp_deriv(const Fp& F, const FpPoly& a) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  fp_trim(r);
  return r;
}

FpPoly fp_pow_mod(const Fp& F, FpPoly a, const Int& e, const FpPoly& f) {
  FpPoly r{1};
  a = fp_rem(F, a, f);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(e.get_mpz_t(), i)) r = fp_rem(F, fp_mul(F, r, a), f);
    a = fp_rem(F, fp_mul(F, a, a), f);
  }
  return r;
}

// Distinct-degree factorization of squarefree monic f; returns (product, degree).
std::vector<std::pair<FpPoly, int>> fp_ddf(const Fp& F, FpPoly f) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly h{0, 1};  // x
  h = fp_rem(F, h, f);
  int d = 0;
  while (fp_deg(f) > 0) {
    ++d;
    if (2 * d > fp_deg(f)) {
      out.emplace_back(f, fp_deg(f));
      break;
    }
    h = fp_pow_mod(F, h, Int(static_cast<long>(F.p)), f);
    FpPoly hx = h;
    if (hx.empty()) hx = {0};
    // h - x
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = F.sub(hx[1], 1);
    fp_trim(hx);
    FpPoly g = fp_gcd(F, f, hx);
    if (fp_deg(g) > 0) {
      out.emplace_back(g, d);
      f = fp_divexact(F, f, g);
      h = fp_rem(F, h, f);
    }
  }
  return out;
}

// Cantor-Zassenhaus equal-degree splitting: f = product of irreducibles of degree d.
void fp_edf(const Fp& F, const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (fp_deg(f) == d) {
    out.push_back(fp_monic(F, f));
    return;
  }
  Int e = (int_pow(Int(static_cast<long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
  while (true) {
    FpPoly a(fp_deg(f), 0);
    for (u64& c : a) c = rng() % F.p;
    fp_trim(a);
    if (fp_deg(a) < 1) continue;
    FpPoly b = fp_pow_mod(F, a, e, f);
    if (b.empty()) continue;
    b[0] = F.sub(b[0], 1);
    fp_trim(b);
    FpPoly g = fp_gcd(F, f, b);
    if (fp_deg(g) > 0 && fp_deg(g) < fp_deg(f)) {
      fp_edf(F, g, d, rng, out);
      fp_edf(F, fp_divexact(F, f, g), d, rng, out);
      return;
    }
  }
}

std::vector<FpPoly> fp_factor_squarefree(const Fp& F, const FpPoly& f, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  for (auto& [g, d] : fp_ddf(F, fp_monic(F, f))) {
    if (fp_deg(g) == d) {
      out.push_back(fp_monic(F, g));
    } else {
      fp_edf(F, g, d, rng, out);
    }
  }
  return out;
}

// ---------- Hensel lifting (linear, full factor list) ----------

// Integer poly ops modulo m, symmetric representatives.
using ZPoly = std::vector<Int>;

void z_trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int z_deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

Int mod_sym(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

ZPoly z_mul_mod(const ZPoly& a, const ZPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (Int& c : r) c = mod_sym(c, m);
  z_trim(r);
  return r;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  z_trim(r);
  return r;
}

// ---------- recombination helpers ----------

Poly poly_from_ints(const ZPoly& v) {
  std::vector<Rat> c(v.size());
  for (size_t i = 0; i < v.size(); ++i) c[i] = Rat(v[i]);
  return Poly(std::move(c));
}

// Exact division test over Z: does d divide f (both integer polys)?
bool z_divides(const Poly& d, const Poly& f) {
  auto [q, r] = f.divmod(d);
  if (!r.is_zero()) return false;
  for (const Rat& a : q.coeffs())
    if (a.get_den() != 1) return false;
  return true;
}

// Eisenstein criterion (also on the reversed polynomial) with small primes.
bool eisenstein_irreducible(const std::vector<Int>& c) {
  static const long kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  auto check = [&](const std::vector<Int>& v) {
    for (long pl : kPrimes) {
      Int p(pl);
      if (v.back() % p == 0) continue;
      if (v.front() % (p * p) == 0) continue;
      bool ok = true;
      for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] % p != 0) { ok = false; break; }
      if (ok) return true;
    }
    return false;
  };
  if (check(c)) return true;
  std::vector<Int> rev(c.rbegin(), c.rend());
  if (rev.back() == 0) return false;
  return check(rev);
}

// Zassenhaus factorization of a primitive squarefree integer polynomial with
// positive leading coefficient, degree >= 1.
std::vector<Poly> zassenhaus(const Poly& f) {
  int n = f.degree();
  if (n == 1) return {f};
  std::vector<Int> fc = f.int_coeffs();
  if (eisenstein_irreducible(fc)) return {f};

  Int lc = fc.back();

  // pick a prime keeping f squarefree, preferring few modular factors
  static const long kTry[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                              61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127};
  std::mt19937_64 rng(0xC0FFEEull);
  Fp bestF{0};
  std::vector<FpPoly> best;
  int tried = 0;
  for (long pl : kTry) {
    Fp F{static_cast<u64>(pl)};
    if (lc % pl == 0) continue;
    FpPoly fp(fc.size());
    for (size_t i = 0; i < fc.size(); ++i) {
      Int c = fc[i] % pl;
      if (c < 0) c += pl;
      fp[i] = c.get_ui();
    }
    fp_trim(fp);
    FpPoly g = fp_gcd(F, fp, fp_deriv(F, fp));
    if (fp_deg(g) != 0) continue;  // not squarefree mod p
    std::vector<FpPoly> fac = fp_factor_squarefree(F, fp, rng);
    if (fac.size() == 1) return {f};  // irreducible mod p => irreducible
    if (best.empty() || fac.size() < best.size()) {
      best = std::move(fac);
      bestF = F;
    }
    if (++tried >= 4) break;
  }
  if (best.empty()) throw std::runtime_error("zassenhaus: no usable prime found");

  Fp F = bestF;
  Int p(static_cast<long>(F.p));

  // lift bound: coefficients of any factor of f (Mignotte-style, generous)
  double l2 = 0;
  for (const Int& c : fc) {
    double d = log_abs(c == 0 ? Int(1) : c);
    l2 = std::max(l2, d);
  }
  // log2(B) with B = 2^n * (n+1) * maxcoeff * |lc|
  double log2B = n + std::log2(n + 1.0) + (l2 + log_abs(lc)) / M_LN2 + 2;
  int K = 1;
  double lp = std::log2(static_cast<double>(F.p));
  while (K * lp < log2B + 1) ++K;

  // Hensel: maintain f = lc * prod g_i (mod p^k), g_i monic.
  size_t r = best.size();
  std::vector<ZPoly> g(r);
  for (size_t i = 0; i < r; ++i) {
    g[i].resize(best[i].size());
    for (size_t j = 0; j < best[i].size(); ++j) g[i][j] = Int(static_cast<long>(best[i][j]));
  }

  // Bezout data mod p: u_i = (lc * prod_{j != i} g_j)^{-1} mod g_i  (in F_p[x])
  std::vector<FpPoly> u(r);
  Int lc_modp = lc % static_cast<long>(F.p);
  if (lc_modp < 0) lc_modp += static_cast<long>(F.p);
  for (size_t i = 0; i < r; ++i) {
    FpPoly prod{lc_modp.get_ui()};
    for (size_t j = 0; j < r; ++j)
      if (j != i) prod = fp_rem(F, fp_mul(F, prod, best[j]), best[i]);
    // invert prod mod best[i] via extended Euclid (use Fermat: prod^(p^d-2)?) --
    // easier: extended gcd in F_p[x]
    FpPoly a = prod, b = best[i];
    FpPoly s0{1}, s1{};
    while (!b.empty()) {
      FpPoly q = fp_divexact(F, a, b);
      FpPoly rr = fp_rem(F, a, b);
      a = std::move(b);
      b = std::move(rr);
      FpPoly s2 = s0;
      FpPoly qs = fp_mul(F, q, s1);
      // s2 = s0 - q*s1
      if (qs.size() > s2.size()) s2.resize(qs.size(), 0);
      for (size_t k = 0; k < qs.size(); ++k) s2[k] = F.sub(s2[k], qs[k]);
      fp_trim(s2);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // a = gcd (a constant), s0 satisfies s0 * prod = a mod best[i]
    u[i] = s0;
    u64 ainv = F.inv(a.empty() ? 1 : a[0]);
    for (u64& c : u[i]) c = F.mul(c, ainv);
  }

  Int q = p;
  for (int k = 1; k < K; ++k) {
    Int q1 = q * p;
    // E = f - lc * prod g_i  (mod q1)
    ZPoly prod{Int(1)};
    for (size_t i = 0; i < r; ++i) prod = z_mul_mod(prod, g[i], q1);
    for (Int& c : prod) c = mod_sym(c * lc, q1);
    z_trim(prod);
    ZPoly fmod(fc.begin(), fc.end());
    for (Int& c : fmod) c = mod_sym(c, q1);
    z_trim(fmod);
    ZPoly E = z_sub(fmod, prod);
    for (Int& c : E) c = mod_sym(c, q1);
    z_trim(E);
    if (E.empty()) { q = q1; continue; }
    // e = E / q mod p
    FpPoly e(E.size());
    for (size_t i = 0; i < E.size(); ++i) {
      Int c = (E[i] / q) % static_cast<long>(F.p);
      if (c < 0) c += static_cast<long>(F.p);
      e[i] = c.get_ui();
    }
    fp_trim(e);
    for (size_t i = 0; i < r; ++i) {
      FpPoly gi(g[i].size());
      for (size_t j = 0; j < g[i].size(); ++j) {
        Int c = g[i][j] % static_cast<long>(F.p);
        if (c < 0) c += static_cast<long>(F.p);
        gi[j] = c.get_ui();
      }
      fp_trim(gi);
      FpPoly di = fp_rem(F, fp_mul(F, e, u[i]), gi);
      // g_i += q * d_i
      if (!di.empty()) {
        if (g[i].size() < di.size()) g[i].resize(di.size(), Int(0));
        for (size_t j = 0; j < di.size(); ++j)
          g[i][j] = mod_sym(g[i][j] + q * Int(static_cast<long>(di[j])), q1);
      }
      for (Int& c : g[i]) c = mod_sym(c, q1);
      z_trim(g[i]);
    }
    q = q1;
  }

  // recombination
  std::vector<Poly> out;
  Poly remaining = f;
  std::vector<size_t> alive(r);
  for (size_t i = 0; i < r; ++i) alive[i] = i;

  auto candidate_for = [&](const std::vector<size_t>& subset) {
    ZPoly cand{mod_sym(Int(remaining.lead().get_num()), q)};
    for (size_t idx : subset) cand = z_mul_mod(cand, g[idx], q);
    return poly_from_ints(cand).primitive();
  };

  size_t card = 1;
  while (2 * card <= alive.size()) {
    // iterate over card-subsets of alive
    std::vector<size_t> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = i;
    bool found = false;
    while (true) {
      std::vector<size_t> subset(card);
      for (size_t i = 0; i < card; ++i) subset[i] = alive[idx[i]];
      Poly cand = candidate_for(subset);
      if (cand.degree() >= 1 && z_divides(cand, remaining)) {
        out.push_back(cand);
        remaining = remaining.divmod(cand).first.primitive();
        std::vector<size_t> next_alive;
        for (size_t a : alive)
          if (std::find(subset.begin(), subset.end(), a) == subset.end()) next_alive.push_back(a);
        alive = std::move(next_alive);
        found = true;
        break;
      }
      // next combination
      int pos = static_cast<int>(card) - 1;
      while (pos >= 0 && idx[pos] == alive.size() - card + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t j = pos + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++card;
  }
  if (remaining.degree() >= 1) out.push_back(remaining);
  return out;
}

}  // namespace

PolyFactorization factor_poly(const Poly& f) {
  PolyFactorization out;
  out.unit = Rat(0);
  if (f.is_zero()) return out;
  out.unit = f.content();
  if (f.is_constant()) return out;
  Poly g = f.primitive();

  // split off x^s
  size_t s = g.x_multiplicity();
  if (s > 0) {
    g = g.shift_down(s);
    out.factors.emplace_back(Poly::x(), static_cast<int>(s));
  }
  if (g.degree() >= 1) {
    // squarefree decomposition (Yun)
    Poly d = g.derivative();
    Poly a = poly_gcd(g, d);
    if (a.degree() == 0) {
      for (Poly& irr : zassenhaus(g)) out.factors.emplace_back(irr, 1);
    } else {
      // Yun's algorithm
      Poly b = g.divmod(a).first;
      Poly c = d.divmod(a).first;
      Poly dd = c - b.derivative();
      int mult = 1;
      while (b.degree() >= 1) {
        Poly gg = poly_gcd(b, dd);
        if (gg.degree() >= 1) {
          Poly part = gg.primitive();
          for (Poly& irr : zassenhaus(part)) out.factors.emplace_back(irr, mult);
        }
        b = b.divmod(gg).first;
        c = dd.divmod(gg).first;
        dd = c - b.derivative();
        ++mult;
      }
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    return x.first.coeffs() < y.first.coeffs();
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  PolyFactorization fz = factor_poly(f);
  return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

std::vector<std::pair<Rat, int>> rational_roots(const Poly& f) {
  std::vector<std::pair<Rat, int>> out;
  for (auto& [g, m] : factor_poly(f).factors) {
    if (g.degree() == 1) out.emplace_back(-g[0] / g[1], m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace arithdyn
