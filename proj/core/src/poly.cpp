#include "arithdyn/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {
const Rat kZero(0);
}

Poly Poly::monomial(const Rat& c, size_t n) {
  if (c == 0) return Poly();
  std::vector<Rat> v(n + 1, Rat(0));
  v[n] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& Poly::operator[](size_t i) const {
  return i < c_.size() ? c_[i] : kZero;
}

Rat Poly::lead() const { return c_.empty() ? Rat(0) : c_.back(); }

size_t Poly::term_count() const {
  size_t n = 0;
  for (const Rat& a : c_)
    if (a != 0) ++n;
  return n;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Rat& a : r.c_) a = -a;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      v[i + j] += c_[i] * o.c_[j];
    }
  }
  return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& s) const {
  if (s == 0) return Poly();
  Poly r = *this;
  for (Rat& a : r.c_) a *= s;
  return r;
}

Poly Poly::operator/(const Rat& s) const {
  if (s == 0) throw ZeroInput("poly / 0");
  Poly r = *this;
  for (Rat& a : r.c_) a /= s;
  return r;
}

Poly operator*(const Rat& s, const Poly& p) { return p * s; }

Rat Poly::eval(const Rat& x) const {
  Rat r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

std::complex<double> Poly::eval(const std::complex<double>& z) const {
  std::complex<double> r(0.0, 0.0);
  for (size_t i = c_.size(); i-- > 0;) r = r * z + to_double(c_[i]);
  return r;
}

std::pair<Rat, Rat> Poly::eval_exact(const Rat& re, const Rat& im) const {
  Rat a(0), b(0);  // a + b i
  for (size_t i = c_.size(); i-- > 0;) {
    Rat na = a * re - b * im + c_[i];
    Rat nb = a * im + b * re;
    a = std::move(na);
    b = std::move(nb);
  }
  return {a, b};
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rat> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return Poly(std::move(v));
}

Poly Poly::compose(const Poly& inner) const {
  Poly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * inner + Poly::constant(c_[i]);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(Rat(1));
  Poly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Poly Poly::iterate_compose(unsigned n) const {
  Poly r = Poly::x();
  for (unsigned i = 0; i < n; ++i) r = compose(r);
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
  if (o.is_zero()) throw ZeroInput("division by zero polynomial");
  Poly r = *this;
  if (r.degree() < o.degree()) return {Poly(), r};
  std::vector<Rat> q(r.degree() - o.degree() + 1, Rat(0));
  Rat lo = o.lead();
  while (!r.is_zero() && r.degree() >= o.degree()) {
    int k = r.degree() - o.degree();
    Rat f = r.lead() / lo;
    q[k] = f;
    std::vector<Rat> nc = r.c_;
    for (size_t i = 0; i < o.c_.size(); ++i) nc[i + k] -= f * o.c_[i];
    nc.pop_back();
    r = Poly(std::move(nc));
  }
  return {Poly(std::move(q)), r};
}

bool Poly::divides(const Poly& o) const {
  if (is_zero()) return o.is_zero();
  return o.divmod(*this).second.is_zero();
}

size_t Poly::x_multiplicity() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return i;
  return 0;
}

Poly Poly::shift_down(size_t n) const {
  if (n == 0) return *this;
  if (c_.size() <= n) return Poly();
  return Poly(std::vector<Rat>(c_.begin() + n, c_.end()));
}

Rat Poly::content() const {
  if (is_zero()) return Rat(0);
  Int num_gcd(0), den_lcm(1);
  for (const Rat& a : c_) {
    if (a == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), a.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), a.get_den_mpz_t());
  }
  Rat c(num_gcd, den_lcm);
  c.canonicalize();
  return lead() < 0 ? -c : c;
}

Poly Poly::primitive() const {
  if (is_zero()) return Poly();
  return *this / content();
}

std::vector<Int> Poly::int_coeffs() const {
  std::vector<Int> out;
  out.reserve(c_.size());
  for (const Rat& a : c_) {
    if (a.get_den() != 1) throw std::invalid_argument("int_coeffs: non-integer coefficient");
    out.push_back(Int(a.get_num()));
  }
  return out;
}

double Poly::max_abs_coeff_log() const {
  double m = -INFINITY;
  for (const Rat& a : c_)
    if (a != 0) m = std::max(m, log_abs(a));
  return m;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rat a = c_[i];
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    first = false;
    Rat abs_a = a < 0 ? Rat(-a) : a;
    if (i == 0 || abs_a != 1) {
      os << abs_a.get_str();
      if (i > 0) os << "*";
    }
    if (i > 0) {
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// Primitive part of an integer-coefficient poly, in place; returns the content.
Int z_content(std::vector<Int>& v) {
  Int g(0);
  for (const Int& a : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  if (g == 0) return Int(1);
  if (!v.empty() && v.back() < 0) g = -g;
  for (Int& a : v) a /= g;
  return g;
}

std::vector<Int> z_clear(const Poly& p) {
  Int den(1);
  for (const Rat& a : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den_mpz_t());
  std::vector<Int> v;
  v.reserve(p.coeffs().size());
  for (const Rat& a : p.coeffs()) {
    Rat s = a * Rat(den);
    v.push_back(Int(s.get_num()));
  }
  return v;
}

int z_deg(const std::vector<Int>& v) { return static_cast<int>(v.size()) - 1; }

// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b, all over Z.
std::vector<Int> z_prem(std::vector<Int> a, const std::vector<Int>& b) {
  int db = z_deg(b);
  const Int& lb = b.back();
  while (z_deg(a) >= db) {
    int k = z_deg(a) - db;
    Int la = a.back();
    for (Int& x : a) x *= lb;
    for (int i = 0; i <= db; ++i) a[i + k] -= la * b[i];
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return a;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? Poly() : b / b.lead();
  if (b.is_zero()) return a / a.lead();
  std::vector<Int> u = z_clear(a), v = z_clear(b);
  z_content(u);
  z_content(v);
  if (z_deg(u) < z_deg(v)) std::swap(u, v);
  while (!v.empty()) {
    std::vector<Int> r = z_prem(u, v);
    z_content(r);
    u = std::move(v);
    v = std::move(r);
  }
  std::vector<Rat> c(u.size());
  for (size_t i = 0; i < u.size(); ++i) c[i] = Rat(u[i]);
  Poly g{std::vector<Rat>(c)};
  return g / g.lead();
}

namespace {

// Determinant by rational Gaussian elimination.
Rat q_det(std::vector<std::vector<Rat>> m) {
  int n = static_cast<int>(m.size());
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) { piv = r; break; }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] / m[col][col];
      for (int cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
    }
    det *= m[col][col];
  }
  return det;
}

}  // namespace

Rat resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  int da = a.degree(), db = b.degree();
  if (da == 0) return rat_pow(a.lead(), db);
  if (db == 0) return rat_pow(b.lead(), da);
  int n = da + db;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < db; ++i)
    for (int k = 0; k <= da; ++k) m[i][i + k] = a[da - k];
  for (int i = 0; i < da; ++i)
    for (int k = 0; k <= db; ++k) m[db + i][i + k] = b[db - k];
  return q_det(std::move(m));
}

Rat discriminant(const Poly& a) {
  int d = a.degree();
  if (d < 1) return Rat(0);
  Rat r = resultant(a, a.derivative());
  Rat lc = a.lead();
  Rat disc = r / lc;
  if (((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1) disc = -disc;
  return disc;
}

Poly squarefree_part(const Poly& a) {
  if (a.degree() <= 0) return a.is_zero() ? Poly() : Poly::constant(Rat(1));
  Poly g = poly_gcd(a, a.derivative());
  Poly sf = a.divmod(g).first;
  return sf.primitive();
}

Rat form_resultant(const Poly& a, const Poly& b, int d) {
  // Identify a degree-d binary form with its coefficient list c_k of
  // x^k z^(d-k); the resultant is the 2d x 2d Sylvester determinant.
  std::vector<Rat> A(d + 1, Rat(0)), B(d + 1, Rat(0));
  for (int i = 0; i <= a.degree(); ++i) A[i] = a[i];
  for (int i = 0; i <= b.degree(); ++i) B[i] = b[i];
  std::vector<std::vector<Rat>> m(2 * d, std::vector<Rat>(2 * d, Rat(0)));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k <= d; ++k) m[i][i + k] = A[d - k];
  for (int i = 0; i < d; ++i)
    for (int k = 0; k <= d; ++k) m[d + i][i + k] = B[d - k];
  return q_det(std::move(m));
}

}  // namespace arithdyn
