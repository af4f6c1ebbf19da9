#include "arithdyn/places.hpp"

#include <algorithm>

#include "arithdyn/errors.hpp"

namespace arithdyn {

long ord_p(const Int& n, const Int& p) {
  if (n == 0) throw ZeroInput("ord_p of zero");
  Int m = n;
  long ord = 0;
  Int q, r;
  while (true) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    m = q;
    ++ord;
  }
  return ord;
}

long ord_p(const Rat& q, const Int& p) {
  if (q == 0) throw ZeroInput("ord_p of zero");
  return ord_p(Int(q.get_num()), p) - ord_p(Int(q.get_den()), p);
}

namespace {

Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eedul);
  while (true) {
    Int x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1, d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      Int diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(Int n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n]++;
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

std::map<Int, int> factor_integer(Int n) {
  if (n < 0) n = -n;
  if (n == 0) throw ZeroInput("factor_integer(0)");
  std::map<Int, int> out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
    while (n % p == 0) {
      out[Int(p)]++;
      n /= p;
    }
  }
  factor_rec(n, out);
  return out;
}

std::vector<Int> primes_of(const Rat& q0) {
  if (q0 == 0) throw ZeroInput("primes_of(0)");
  Rat q = q0;
  q.canonicalize();
  std::map<Int, int> f = factor_integer(Int(q.get_num()));
  std::map<Int, int> g = factor_integer(Int(q.get_den()));
  std::vector<Int> out;
  for (auto& [p, e] : f) out.push_back(p);
  for (auto& [p, e] : g) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string rat_string(const Rat& q) {
  return q.get_str();
}

LocalLog abs_log(const Rat& x, const Place& v) {
  if (x == 0) throw ZeroInput("abs_log(0)");
  if (v.is_finite()) {
    return LocalLog{v, Rat(-ord_p(x, v.prime())), 0.0, 0.0};
  }
  double val = log_abs(x);
  // mpz_get_d_2exp mantissa + std::log: a few ulp relative on each log term.
  double err = (std::fabs(val) + 1.0) * 4e-16;
  return LocalLog{v, Rat(0), val, err};
}

double product_formula_defect(const Rat& x) {
  if (x == 0) throw ZeroInput("product_formula_defect(0)");
  double total = abs_log(x, Place::archimedean()).numeric;
  for (const Int& p : primes_of(x)) {
    LocalLog l = abs_log(x, Place::finite(p));
    total += to_double(l.exact) * log_abs(p);
  }
  return total;
}

}  // namespace arithdyn
