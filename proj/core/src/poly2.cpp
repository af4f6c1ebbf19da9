#include "arithdyn/poly2.hpp"

#include <algorithm>
#include <sstream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {
const Poly kZeroPoly;
}

void Poly2::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int Poly2::deg_x() const {
  int d = -1;
  for (const Poly& p : c_) d = std::max(d, p.degree());
  return d;
}

int Poly2::total_degree() const {
  int d = -1;
  for (size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) d = std::max(d, c_[k].degree() + static_cast<int>(k));
  return d;
}

const Poly& Poly2::coeff_y(size_t k) const {
  return k < c_.size() ? c_[k] : kZeroPoly;
}

Poly2 Poly2::operator-() const {
  Poly2 r = *this;
  for (Poly& p : r.c_) p = -p;
  return r;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  std::vector<Poly> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] = v[i] + o.c_[i];
  return Poly2(std::move(v));
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + (-o); }

Poly2 Poly2::operator*(const Poly2& o) const {
  if (is_zero() || o.is_zero()) return Poly2();
  std::vector<Poly> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      v[i + j] = v[i + j] + c_[i] * o.c_[j];
    }
  }
  return Poly2(std::move(v));
}

Poly2 Poly2::operator*(const Rat& s) const {
  Poly2 r = *this;
  for (Poly& p : r.c_) p = p * s;
  return r;
}

Rat Poly2::eval(const Rat& x, const Rat& y) const {
  Rat r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * y + c_[i].eval(x);
  return r;
}

Poly Poly2::eval_y(const Rat& y) const {
  Poly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * Poly::constant(y) + c_[i];
  return r;
}

Poly Poly2::eval_x(const Rat& x) const {
  std::vector<Rat> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].eval(x);
  return Poly(std::move(v));
}

Poly2 Poly2::subst(const Poly2& xs, const Poly2& ys) const {
  Poly2 r;
  for (size_t i = c_.size(); i-- > 0;) {
    // r = r * ys + c_i(xs)
    Poly2 ci;
    for (size_t j = c_[i].coeffs().size(); j-- > 0;)
      ci = ci * xs + Poly2::constant(c_[i][j]);
    r = r * ys + ci;
  }
  return r;
}

Poly2 Poly2::pow(unsigned e) const {
  Poly2 r = Poly2::constant(Rat(1));
  Poly2 b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

double Poly2::max_abs_coeff_log() const {
  double m = -INFINITY;
  for (const Poly& p : c_)
    if (!p.is_zero()) m = std::max(m, p.max_abs_coeff_log());
  return m;
}

size_t Poly2::term_count() const {
  size_t n = 0;
  for (const Poly& p : c_) n += p.term_count();
  return n;
}

std::vector<Rat> Poly2::all_coeffs() const {
  std::vector<Rat> out;
  for (const Poly& p : c_)
    for (const Rat& a : p.coeffs())
      if (a != 0) out.push_back(a);
  return out;
}

std::string Poly2::str(const std::string& xv, const std::string& yv) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = c_.size(); k-- > 0;) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k].str(xv) << ")";
    if (k > 0) {
      os << "*" << yv;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

Poly resultant_y(const Poly2& a, const Poly2& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  int da = a.deg_y(), db = b.deg_y();
  if (da == 0 && db == 0) return Poly::constant(Rat(1));
  if (da == 0) return a.coeff_y(0).pow(static_cast<unsigned>(db));
  if (db == 0) return b.coeff_y(0).pow(static_cast<unsigned>(da));

  int n = da + db;
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int i = 0; i < db; ++i)
    for (int k = 0; k <= da; ++k) m[i][i + k] = a.coeff_y(da - k);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k <= db; ++k) m[db + i][i + k] = b.coeff_y(db - k);

  // Bareiss fraction-free elimination over the integral domain Q[x].
  Poly prev = Poly::constant(Rat(1));
  int sign = 1;
  for (int col = 0; col < n - 1; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!m[r][col].is_zero()) { piv = r; break; }
    if (piv < 0) return Poly();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    for (int r = col + 1; r < n; ++r) {
      for (int cc = col + 1; cc < n; ++cc) {
        Poly num = m[col][col] * m[r][cc] - m[r][col] * m[col][cc];
        m[r][cc] = num.divmod(prev).first;  // exact by Bareiss
      }
      m[r][col] = Poly();
    }
    prev = m[col][col];
  }
  Poly det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

Poly2 swap_vars(const Poly2& a) {
  int dx = a.deg_x();
  std::vector<Poly> out(static_cast<size_t>(std::max(dx, -1) + 1));
  std::vector<std::vector<Rat>> cs(out.size());
  for (size_t k = 0; k < cs.size(); ++k) cs[k].assign(a.ycoeffs().size(), Rat(0));
  for (size_t yk = 0; yk < a.ycoeffs().size(); ++yk)
    for (int xi = 0; xi <= a.ycoeffs()[yk].degree(); ++xi)
      cs[xi][yk] = a.ycoeffs()[yk][xi];
  for (size_t k = 0; k < cs.size(); ++k) out[k] = Poly(std::move(cs[k]));
  return Poly2(std::move(out));
}

}  // namespace arithdyn
