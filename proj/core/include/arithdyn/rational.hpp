#ifndef ARITHDYN_RATIONAL_HPP
#define ARITHDYN_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace arithdyn {

using Int = mpz_class;
using Rat = mpq_class;

// log|n| for a nonzero integer, accurate to a few ulp even for huge n.
inline double log_abs(const Int& n) {
  signed long exp2;
  double m = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(exp2) * M_LN2;
}

inline double log_abs(const Rat& q) {
  return log_abs(Int(q.get_num())) - log_abs(Int(q.get_den()));
}

inline double to_double(const Rat& q) { return mpq_get_d(q.get_mpq_t()); }

// ord_p of a nonzero integer.
long ord_p(const Int& n, const Int& p);
// ord_p of a nonzero rational (negative when p divides the denominator).
long ord_p(const Rat& q, const Int& p);

// |x|_p for nonzero rational, as exact power of p: returns ord so that |x|_p = p^{-ord}.
inline long padic_ord(const Rat& q, const Int& p) { return ord_p(q, p); }

// Prime factorization (trial division + Pollard rho); input |n| >= 1.
std::map<Int, int> factor_integer(Int n);

// Sorted primes dividing numerator or denominator of q (q != 0).
std::vector<Int> primes_of(const Rat& q);

bool is_prime(const Int& n);

// Size of |n| in bits.
inline size_t bit_size(const Int& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }
inline size_t bit_size(const Rat& q) {
  return bit_size(Int(q.get_num())) + bit_size(Int(q.get_den()));
}

inline Rat rat_pow(const Rat& q, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

inline Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

std::string rat_string(const Rat& q);

}  // namespace arithdyn

#endif
