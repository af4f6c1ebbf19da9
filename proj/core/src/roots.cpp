#include "arithdyn/roots.hpp"

#include <algorithm>
#include <climits>
#include <cmath>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

// Coefficients scaled into double range: c_i * 2^-E with E = max exponent.
std::vector<double> scaled_coeffs(const Poly& f) {
  long maxe = LONG_MIN;
  for (const Rat& a : f.coeffs()) {
    if (a == 0) continue;
    signed long en, ed;
    mpz_get_d_2exp(&en, a.get_num_mpz_t());
    mpz_get_d_2exp(&ed, a.get_den_mpz_t());
    maxe = std::max(maxe, static_cast<long>(en - ed));
  }
  std::vector<double> c(f.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (f[i] == 0) {
      c[i] = 0;
      continue;
    }
    Rat scaled = f[i];
    // multiply by 2^-maxe exactly
    if (maxe > 0)
      scaled /= Rat(int_pow(Int(2), static_cast<unsigned long>(maxe)));
    else if (maxe < 0)
      scaled *= Rat(int_pow(Int(2), static_cast<unsigned long>(-maxe)));
    c[i] = to_double(scaled);
  }
  return c;
}

std::complex<double> horner(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> r(0, 0);
  for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

std::complex<double> horner_deriv(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> r(0, 0);
  for (size_t i = c.size(); i-- > 1;) r = r * z + c[i] * static_cast<double>(i);
  return r;
}

Rat rat_from_double(double x) {
  Rat r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

}  // namespace

std::vector<RootBox> isolate_roots(const Poly& f, double tol) {
  int n = f.degree();
  if (n <= 0) return {};
  std::vector<double> c = scaled_coeffs(f);
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (static_cast<int>(c.size()) - 1 != n)
    throw RootIsolationFailure("leading coefficient underflow");

  // Cauchy bound for |roots|
  double r0 = 0;
  for (int i = 0; i < n; ++i) r0 = std::max(r0, std::fabs(c[i] / c[n]));
  double radius = 1.0 + r0;

  // Aberth from a perturbed circle
  std::vector<std::complex<double>> z(n);
  for (int i = 0; i < n; ++i) {
    double ang = 2 * M_PI * i / n + 0.41;
    z[i] = std::polar(radius * (0.6 + 0.25 * ((i * 7) % 11) / 11.0), ang);
  }
  for (int iter = 0; iter < 400; ++iter) {
    double move = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> p = horner(c, z[i]);
      std::complex<double> dp = horner_deriv(c, z[i]);
      if (std::abs(dp) == 0.0) {
        z[i] += std::complex<double>(1e-8, 1e-8);
        continue;
      }
      std::complex<double> ratio = p / dp;
      std::complex<double> s(0, 0);
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      std::complex<double> d = ratio / (1.0 - ratio * s);
      z[i] -= d;
      move = std::max(move, std::abs(d));
    }
    if (move < 1e-15 * radius) break;
  }
  // Newton polish
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < 6; ++k) {
      std::complex<double> p = horner(c, z[i]);
      std::complex<double> dp = horner_deriv(c, z[i]);
      if (std::abs(dp) == 0.0) break;
      std::complex<double> d = p / dp;
      z[i] -= d;
      if (std::abs(d) < 1e-17 * std::max(1.0, std::abs(z[i]))) break;
    }
  }

  // Exact-arithmetic residual certificate: |z - root| <= n |f(z)/f'(z)|
  // provided the disks are disjoint.
  std::vector<RootBox> out(n);
  for (int i = 0; i < n; ++i) {
    Rat re = rat_from_double(z[i].real()), im = rat_from_double(z[i].imag());
    auto [pr, pi] = f.eval_exact(re, im);
    auto [dr, di] = f.derivative().eval_exact(re, im);
    double pabs = std::hypot(to_double(pr), to_double(pi));
    double dabs = std::hypot(to_double(dr), to_double(di));
    if (dabs == 0.0) throw RootIsolationFailure("derivative vanished at approximate root");
    double err = static_cast<double>(n) * pabs / dabs;
    out[i] = RootBox{z[i], std::max(err, 1e-300)};
    if (!(err < std::max(tol, 1e-9) * std::max(1.0, std::abs(z[i])) * 1e3))
      throw RootIsolationFailure("residual too large for certification");
  }
  std::sort(out.begin(), out.end(), [](const RootBox& a, const RootBox& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  // disjointness of certification disks
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double dist = std::abs(out[i].z - out[j].z);
      if (dist < out[i].err + out[j].err)
        throw RootIsolationFailure("certification disks overlap");
    }
  return out;
}

}  // namespace arithdyn
