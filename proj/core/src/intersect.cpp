#include "arithdyn/intersect.hpp"

#include <algorithm>
#include <cmath>

#include "arithdyn/errors.hpp"
#include "arithdyn/factor.hpp"

namespace arithdyn {

namespace {

Poly qr_reduce(const Poly& a, const Poly& m) { return a.divmod(m).second; }

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
  if (r0.degree() != 0) throw std::logic_error("qr_inv: element not invertible");
  return qr_reduce(s0 / r0[0], m);
}

}  // namespace

// minimal polynomial of g(u) in Q[u]/(m), m irreducible: squarefree part of
// the characteristic polynomial of multiplication by g.
Poly minpoly_mod(const Poly& m, const Poly& g) {
  int n = m.degree();
  if (n > 64) throw DegreeBudgetExceeded("quotient element degree too large");
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n, Rat(0)));
  Poly cur = qr_reduce(g, m);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= cur.degree(); ++i) M[i][j] = cur[i];
    cur = qr_reduce(cur * Poly::x(), m);
  }
  std::vector<Rat> charc(n + 1, Rat(0));
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
  return squarefree_part(Poly(std::move(charc))).primitive();
}

Poly minpoly_of_coordinate(const VarietyComponent& c, size_t coord) {
  return minpoly_mod(c.rx, c.coord_params.at(coord));
}

namespace {

// gcd in (Q[u]/(m))[y] of the reductions of the given equations; the zero
// polynomial is returned when every equation vanishes identically mod m.
std::vector<Poly> qy_gcd_of_equations(const std::vector<Poly2>& eqs, const Poly& m) {
  // represent y-polys as vectors of quotient elements
  auto reduce_eq = [&](const Poly2& e) {
    std::vector<Poly> v(e.ycoeffs().size());
    for (size_t k = 0; k < e.ycoeffs().size(); ++k) v[k] = qr_reduce(e.ycoeffs()[k], m);
    while (!v.empty() && v.back().is_zero()) v.pop_back();
    return v;
  };
  auto qy_rem = [&](std::vector<Poly> a, const std::vector<Poly>& b) {
    Poly lb_inv = qr_inv(b.back(), m);
    while (a.size() >= b.size()) {
      Poly c = qr_reduce(a.back() * lb_inv, m);
      size_t k = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[i + k] = qr_reduce(a[i + k] - c * b[i], m);
      a.pop_back();
      while (!a.empty() && a.back().is_zero()) a.pop_back();
      if (a.empty()) break;
    }
    return a;
  };
  std::vector<Poly> g;
  for (const Poly2& e : eqs) {
    std::vector<Poly> v = reduce_eq(e);
    if (v.empty()) continue;  // this equation vanishes on the component
    if (g.empty()) {
      g = std::move(v);
      continue;
    }
    // Euclid
    std::vector<Poly> a = g, b = v;
    while (!b.empty()) {
      std::vector<Poly> r = qy_rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    g = std::move(a);
    if (g.size() == 1) return g;  // unit gcd
  }
  return g;
}

}  // namespace

size_t SolutionVariety::count() const {
  size_t n = 0;
  for (const auto& c : components) n += static_cast<size_t>(c.rx.degree());
  return n;
}

std::vector<std::vector<Rat>> SolutionVariety::rational_points() const {
  std::vector<std::vector<Rat>> out;
  for (const auto& c : components) {
    if (c.rx.degree() != 1) continue;
    Rat u = -c.rx[0] / c.rx[1];
    std::vector<Rat> pt;
    for (const Poly& p : c.coord_params) pt.push_back(p.eval(u));
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      int c = cmp(a[i], b[i]);
      if (c != 0) return c < 0;
    }
    return a.size() < b.size();
  });
  return out;
}

bool SolutionVariety::verify(const std::vector<Poly2>& equations) const {
  for (const auto& c : components) {
    if (c.coord_params.size() < 2) {
      // univariate component: coordinate is u itself
      for (const Poly2& e : equations) {
        if (e.deg_y() > 0) return false;
        if (!qr_reduce(e.coeff_y(0), c.rx).is_zero()) return false;
      }
      continue;
    }
    const Poly& px = c.coord_params[0];
    const Poly& py = c.coord_params[1];
    for (const Poly2& e : equations) {
      // e(px(u), py(u)) mod rx == 0
      Poly acc;
      for (size_t k = e.ycoeffs().size(); k-- > 0;) {
        acc = qr_reduce(acc * py, c.rx);
        // add e.ycoeffs()[k](px(u))
        Poly coeff;
        const Poly& ck = e.ycoeffs()[k];
        for (size_t i = ck.coeffs().size(); i-- > 0;) {
          coeff = qr_reduce(coeff * px, c.rx);
          if (ck[i] != 0) coeff = coeff + Poly::constant(ck[i]);
        }
        acc = qr_reduce(acc + coeff, c.rx);
      }
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

SolutionVariety solve_system_a1(const Poly& equation) {
  SolutionVariety out;
  if (equation.is_zero()) {
    out.positive_dimensional = true;
    return out;
  }
  if (equation.degree() > 4096) throw DegreeBudgetExceeded("equation degree over budget");
  for (auto& [g, mult] : factor_poly(equation).factors) {
    VarietyComponent c;
    c.rx = g;
    c.coord_params = {Poly::x()};
    c.multiplicity = mult;
    out.components.push_back(std::move(c));
  }
  return out;
}

SolutionVariety solve_system_a2(const std::vector<Poly2>& equations) {
  std::vector<Poly2> eqs;
  for (const Poly2& e : equations) {
    if (e.is_zero()) continue;
    bool dup = false;
    for (const Poly2& f : eqs)
      if (f == e) dup = true;
    if (!dup) eqs.push_back(e);
  }
  SolutionVariety out;
  if (eqs.empty()) {
    out.positive_dimensional = true;
    return out;
  }
  if (eqs.size() == 1) throw PositiveDimensional("single equation cuts out a curve");

  for (long lambda : {0L, 1L, -1L, 2L, -2L, 3L}) {
    // shear x = u - lambda y; variables (u, y)
    std::vector<Poly2> sh;
    sh.reserve(eqs.size());
    for (const Poly2& e : eqs) {
      Poly2 xs = Poly2::from_x(Poly::x()) - Poly2::y() * Rat(lambda);
      sh.push_back(e.subst(xs, Poly2::y()));
    }
    // eliminate y: gcd of pairwise resultants of the equations involving y
    Poly R;
    bool all_zero = true;
    for (size_t i = 0; i < sh.size() && R.degree() != 0; ++i) {
      if (sh[i].deg_y() == 0) continue;
      for (size_t j = i + 1; j < sh.size(); ++j) {
        if (sh[j].deg_y() == 0) continue;
        Poly r = resultant_y(sh[i], sh[j]);
        if (!r.is_zero()) {
          all_zero = false;
          R = poly_gcd(R, r);
        }
      }
    }
    // univariate (in u) equations constrain directly
    for (const Poly2& e : sh)
      if (e.deg_y() == 0) {
        R = poly_gcd(R, e.coeff_y(0));
        all_zero = false;
      }
    if (all_zero) throw PositiveDimensional("all pairwise resultants vanish");
    if (R.is_zero()) continue;  // degenerate shear
    if (R.degree() == 0) return out;  // empty affine solution set

    // multiplicity bookkeeping against the first nonzero pairwise resultant
    Poly mult_ref;
    for (size_t i = 0; i < sh.size() && mult_ref.is_zero(); ++i)
      for (size_t j = i + 1; j < sh.size() && mult_ref.is_zero(); ++j)
        mult_ref = resultant_y(sh[i], sh[j]);

    SolutionVariety cand;
    bool ok = true;
    for (auto& [g, mult0] : factor_poly(R).factors) {
      std::vector<Poly> gy = qy_gcd_of_equations(sh, g);
      if (gy.empty()) {
        // every equation vanishes identically over this factor: a vertical
        // component in the sheared frame
        throw PositiveDimensional("component of positive dimension over " + g.str());
      }
      if (gy.size() == 1) continue;  // no common y over this u-factor
      if (gy.size() > 2) {
        ok = false;  // shear failed to separate; try the next one
        break;
      }
      // y = -c0/c1 in Q[u]/(g)
      Poly y_par = qr_reduce(-gy[0] * qr_inv(gy[1], g), g);
      Poly x_par = qr_reduce(Poly::x() - y_par * Rat(lambda), g);
      int mult = 1;
      if (!mult_ref.is_zero()) {
        mult = 0;
        Poly t = mult_ref;
        while (true) {
          auto [q, r] = t.divmod(g);
          if (!r.is_zero()) break;
          t = q;
          ++mult;
        }
        if (mult == 0) mult = 1;
      }
      cand.components.push_back(VarietyComponent{g, {x_par, y_par}, mult});
    }
    if (!ok) continue;
    // exact re-substitution check in the original coordinates
    if (!cand.verify(eqs)) continue;
    return cand;
  }
  throw DegreeBudgetExceeded("no shear separated the system");
}

A2Morphism A2Morphism::identity() {
  return A2Morphism{Poly2::from_x(Poly::x()), Poly2::y()};
}

namespace {

// numerator/denominator of f as Poly pair
std::pair<Poly, Poly> map_pair(const RationalMapP1& f) { return {f.num(), f.den()}; }

// equation Num_F(t) Den_C(t) - Num_C(t) Den_F(t) in one variable
Poly equalizer_poly(const RationalMapP1& Fm, const RationalMapP1& C) {
  auto [nf, df] = map_pair(Fm);
  auto [nc, dc] = map_pair(C);
  return (nf * dc - nc * df).primitive();
}

std::vector<P1Point> infinity_solutions(const RationalMapP1& Fm, const RationalMapP1& C) {
  std::vector<P1Point> out;
  P1Point inf = P1Point::infinity();
  if (Fm.eval(inf) == C.eval(inf)) out.push_back(inf);
  return out;
}

// the pair of Poly2 equations F^m - C = 0 for split endomorphisms on (P^1)^2
std::vector<Poly2> split_equations(const SplitEndo& Fm, const SplitEndo& C) {
  if (Fm.arity() != 2 || C.arity() != 2)
    throw DegreeBudgetExceeded("split equalizers implemented for (P^1)^2");
  std::vector<Poly2> eqs;
  auto to2 = [&](const Poly& p, int var) {
    // univariate poly in coordinate var (0 = x, 1 = y) as a Poly2
    if (var == 0) return Poly2::from_x(p);
    std::vector<Poly> yc(p.coeffs().size());
    for (size_t i = 0; i < p.coeffs().size(); ++i) yc[i] = Poly::constant(p[i]);
    return Poly2(std::move(yc));
  };
  for (int i = 0; i < 2; ++i) {
    const RationalMapP1& f = Fm.comps[i];
    const RationalMapP1& c = C.comps[i];
    int vf = Fm.perm[i], vc = C.perm[i];
    Poly2 e = to2(f.num(), vf) * to2(c.den(), vc) - to2(c.num(), vc) * to2(f.den(), vf);
    eqs.push_back(e);
  }
  return eqs;
}

std::vector<Poly2> skew_equations(const SkewProduct& Fm, const A2Morphism& C) {
  std::vector<Poly2> eqs;
  eqs.push_back(Poly2::from_x(Fm.p()) - C.c1);
  eqs.push_back(Fm.q() - C.c2);
  return eqs;
}

std::vector<Poly2> henon_equations(const HenonMap& F, int m, const A2Morphism& C) {
  // iterate (x, y) -> (y, P(y) - delta x) symbolically
  Poly2 X = Poly2::from_x(Poly::x()), Y = Poly2::y();
  for (int k = 0; k < m; ++k) {
    for (const auto& fac : F.factors()) {
      // newY = P(Y) - delta X
      Poly2 ny;
      for (size_t i = fac.P.coeffs().size(); i-- > 0;) {
        ny = ny * Y;
        if (fac.P[i] != 0) ny = ny + Poly2::constant(fac.P[i]);
      }
      ny = ny - X * fac.delta;
      X = Y;
      Y = std::move(ny);
      if (Y.total_degree() > 4096) throw DegreeBudgetExceeded("henon equalizer degree");
    }
  }
  return {X - C.c1, Y - C.c2};
}

}  // namespace

SolutionVariety solve_equalizer(const RationalMapP1& F, int m, const RationalMapP1& C) {
  RationalMapP1 Fm = F.iterate(static_cast<unsigned>(m));
  Poly e = equalizer_poly(Fm, C);
  SolutionVariety out = solve_system_a1(e);
  out.points_at_infinity.clear();
  for (const P1Point& p : infinity_solutions(Fm, C)) out.points_at_infinity.push_back({p});
  return out;
}

SolutionVariety solve_equalizer(const SkewProduct& F, int m, const A2Morphism& C) {
  SkewProduct Fm = F.iterate(static_cast<unsigned>(m));
  return solve_system_a2(skew_equations(Fm, C));
}

SolutionVariety solve_equalizer(const HenonMap& F, int m, const A2Morphism& C) {
  return solve_system_a2(henon_equations(F, m, C));
}

SolutionVariety solve_equalizer(const SplitEndo& F, int m, const SplitEndo& C) {
  SplitEndo Fm = F;
  for (int k = 1; k < m; ++k) Fm = F.compose(Fm);
  return solve_system_a2(split_equations(Fm, C));
}

SolutionVariety solve_common(const RationalMapP1& F, const RationalMapP1& G,
                             const RationalMapP1& C, int m, int n) {
  RationalMapP1 Fm = F.iterate(static_cast<unsigned>(m));
  RationalMapP1 Gn = G.iterate(static_cast<unsigned>(n));
  Poly e = poly_gcd(equalizer_poly(Fm, C), equalizer_poly(Gn, C)).primitive();
  SolutionVariety out = e.degree() >= 1 ? solve_system_a1(e) : SolutionVariety{};
  for (const P1Point& p : infinity_solutions(Fm, C)) {
    if (Gn.eval(P1Point::infinity()) == C.eval(P1Point::infinity()))
      out.points_at_infinity.push_back({p});
  }
  return out;
}

SolutionVariety solve_common(const SkewProduct& F, const SkewProduct& G, const A2Morphism& C,
                             int m, int n) {
  SkewProduct Fm = F.iterate(static_cast<unsigned>(m));
  SkewProduct Gn = G.iterate(static_cast<unsigned>(n));
  std::vector<Poly2> eqs = skew_equations(Fm, C);
  for (Poly2& e : skew_equations(Gn, C)) eqs.push_back(std::move(e));
  return solve_system_a2(eqs);
}

SolutionVariety solve_common(const SplitEndo& F, const SplitEndo& G, const SplitEndo& C, int m,
                             int n) {
  SplitEndo Fm = F;
  for (int k = 1; k < m; ++k) Fm = F.compose(Fm);
  SplitEndo Gn = G;
  for (int k = 1; k < n; ++k) Gn = G.compose(Gn);
  std::vector<Poly2> eqs = split_equations(Fm, C);
  for (Poly2& e : split_equations(Gn, C)) eqs.push_back(std::move(e));
  return solve_system_a2(eqs);
}

std::vector<DecayRow> height_decay_report(const RationalMapP1& F, const RationalMapP1& C,
                                          int m_lo, int m_hi, double tol) {
  std::vector<DecayRow> rows;
  int d = F.degree();
  for (int m = m_lo; m <= m_hi; ++m) {
    SolutionVariety sol = solve_equalizer(F, m, C);
    DecayRow row;
    row.m = m;
    row.count = sol.count();
    double maxh = 0.0;
    for (const auto& comp : sol.components) {
      HeightValue h = canonical_height_p1(F, AlgebraicNumber{comp.rx, 0}, tol);
      maxh = std::max(maxh, h.exact_zero ? 0.0 : h.total());
    }
    row.max_height = maxh;
    double dm = std::pow(static_cast<double>(d), m);
    row.dm_times_max = dm * maxh;
    row.decay_product = (dm - C.degree()) * maxh;
    rows.push_back(row);
  }
  return rows;
}

DensityReport density_report(const SplitEndo& F, const SplitEndo& G, const SplitEndo& C,
                             int m_lo, int m_hi, int n_lo, int n_hi, int curve_degree_cap) {
  DensityReport rep;
  std::vector<VarietyComponent> all;
  for (int m = m_lo; m <= m_hi; ++m)
    for (int n = n_lo; n <= n_hi; ++n) {
      SolutionVariety sol = solve_common(F, G, C, m, n);
      DensityCell cell{m, n, sol.count()};
      rep.cells.push_back(cell);
      for (auto& c : sol.components) all.push_back(c);
    }
  for (const auto& c : all) rep.cumulative_count += static_cast<size_t>(c.rx.degree());
  if (all.empty()) return rep;

  // curve space: coefficients c_{ij} of sum c_ij x^i y^j (i + j <= cap)
  // vanishing on every component, as exact linear conditions in the
  // quotient rings.
  std::vector<std::pair<int, int>> monos;
  for (int i = 0; i <= curve_degree_cap; ++i)
    for (int j = 0; j + i <= curve_degree_cap; ++j) monos.emplace_back(i, j);
  std::vector<std::vector<Rat>> M;  // rows: conditions; cols: monomials
  for (const auto& c : all) {
    int n = c.rx.degree();
    const Poly& px = c.coord_params[0];
    const Poly& py = c.coord_params[1];
    // value of x^i y^j mod rx for each monomial
    std::vector<std::vector<Rat>> rows(static_cast<size_t>(n),
                                       std::vector<Rat>(monos.size(), Rat(0)));
    for (size_t k = 0; k < monos.size(); ++k) {
      auto [i, j] = monos[k];
      Poly v = Poly::constant(Rat(1));
      for (int t = 0; t < i; ++t) v = qr_reduce(v * px, c.rx);
      for (int t = 0; t < j; ++t) v = qr_reduce(v * py, c.rx);
      for (int r = 0; r <= v.degree(); ++r) rows[static_cast<size_t>(r)][k] = v[r];
    }
    for (auto& r : rows) M.push_back(std::move(r));
  }
  // kernel of M by exact Gaussian elimination
  size_t rows_n = M.size(), cols_n = monos.size();
  std::vector<int> pivot_of_col(cols_n, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols_n && r < rows_n; ++c) {
    size_t piv = r;
    while (piv < rows_n && M[piv][c] == 0) ++piv;
    if (piv == rows_n) continue;
    std::swap(M[piv], M[r]);
    for (size_t i = 0; i < rows_n; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rat f = M[i][c] / M[r][c];
      for (size_t j = c; j < cols_n; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_of_col[c] = static_cast<int>(r);
    ++r;
  }
  for (size_t free_col = 0; free_col < cols_n; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    // basis vector with this free coordinate = 1
    std::vector<Rat> v(cols_n, Rat(0));
    v[free_col] = 1;
    for (size_t c = 0; c < cols_n; ++c) {
      int pr = pivot_of_col[c];
      if (pr < 0) continue;
      v[c] = -M[static_cast<size_t>(pr)][free_col] / M[static_cast<size_t>(pr)][c];
    }
    // assemble Poly2
    std::vector<Poly> yc(static_cast<size_t>(curve_degree_cap) + 1);
    for (size_t k = 0; k < monos.size(); ++k) {
      auto [i, j] = monos[k];
      if (v[k] == 0) continue;
      yc[static_cast<size_t>(j)] =
          yc[static_cast<size_t>(j)] + Poly::monomial(v[k], static_cast<size_t>(i));
    }
    Poly2 curve(std::move(yc));
    if (!curve.is_zero()) rep.curve_basis.push_back(std::move(curve));
  }
  rep.curve_found = !rep.curve_basis.empty();
  return rep;
}

namespace {

// evaluate f^n at z by iteration; false when the orbit leaves the safe range
bool iter_eval(const RationalMapP1& f, int n, std::complex<double> z,
               std::complex<double>* out) {
  for (int k = 0; k < n; ++k) {
    std::complex<double> num = f.num().eval(z);
    std::complex<double> den = f.den().eval(z);
    if (!(std::abs(den) > 1e-280)) return false;
    z = num / den;
    if (!(std::abs(z) < 1e100)) return false;
  }
  *out = z;
  return true;
}

}  // namespace

EquidistResult equidistribution_check(const RationalMapP1& f, int n, ReferenceLaw law,
                                      std::complex<double> dirac_point) {
  long deg_target = 1;
  for (int i = 0; i < n; ++i) {
    deg_target *= f.degree();
    if (deg_target > 4096) throw DegreeBudgetExceeded("period-n point degree over budget");
  }
  // affine period-n points: roots of num(f^n) - x den(f^n); count deg_target
  // (+1 projective fixed point at infinity for polynomial maps)
  EquidistResult res;
  bool inf_fixed = f.eval(P1Point::infinity()) == P1Point::infinity();
  size_t expect_affine = static_cast<size_t>(deg_target) + (inf_fixed ? 0u : 1u);
  // search radius: all periodic points lie in the filled Julia set
  double R = 3.0;
  for (const Rat& c : f.num().coeffs()) R += std::fabs(to_double(c));
  for (const Rat& c : f.den().coeffs()) R += std::fabs(to_double(c));

  std::vector<std::complex<double>> roots;
  auto try_add = [&](std::complex<double> z) {
    for (const auto& r : roots)
      if (std::abs(r - z) < 1e-7) return;
    roots.push_back(z);
  };
  auto newton = [&](std::complex<double> z) -> std::optional<std::complex<double>> {
    for (int it = 0; it < 60; ++it) {
      // F(z) = f^n(z) - z; F'(z) via product of derivatives along the orbit
      std::complex<double> cur = z, deriv(1.0, 0.0);
      bool ok = true;
      for (int k = 0; k < n; ++k) {
        std::complex<double> num = f.num().eval(cur), den = f.den().eval(cur);
        std::complex<double> dnum = f.num().derivative().eval(cur),
                             dden = f.den().derivative().eval(cur);
        if (!(std::abs(den) > 1e-280)) {
          ok = false;
          break;
        }
        deriv *= (dnum * den - num * dden) / (den * den);
        cur = num / den;
        if (!(std::abs(cur) < 1e60)) {
          ok = false;
          break;
        }
      }
      if (!ok) return std::nullopt;
      std::complex<double> val = cur - z;
      std::complex<double> dval = deriv - 1.0;
      if (std::abs(dval) < 1e-280) return std::nullopt;
      std::complex<double> step = val / dval;
      z -= step;
      if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(z))) {
        std::complex<double> check;
        if (iter_eval(f, n, z, &check) && std::abs(check - z) < 1e-8 * std::max(1.0, std::abs(z)))
          return z;
        return std::nullopt;
      }
    }
    return std::nullopt;
  };

  // real roots by sign-change bisection (dense scan), then complex seeds
  {
    int scan = 1 << 17;
    double lo = -R, hi = R;
    auto val = [&](double x) -> std::optional<double> {
      std::complex<double> out;
      if (!iter_eval(f, n, {x, 0.0}, &out)) return std::nullopt;
      return out.real() - x;
    };
    std::optional<double> prev = val(lo);
    double prev_x = lo;
    for (int i = 1; i <= scan; ++i) {
      double x = lo + (hi - lo) * i / scan;
      std::optional<double> cur = val(x);
      if (prev && cur && (*prev <= 0) != (*cur <= 0)) {
        double a = prev_x, b = x;
        for (int it = 0; it < 80; ++it) {
          double mid = (a + b) / 2;
          std::optional<double> vm = val(mid);
          if (!vm) break;
          if ((*val(a) <= 0) != (*vm <= 0)) b = mid;
          else a = mid;
        }
        if (auto z = newton({(a + b) / 2, 0.0})) try_add(*z);
      }
      prev = cur;
      prev_x = x;
    }
  }
  {
    int seeds = 4096;
    for (int ring = 0; ring < 6 && roots.size() < expect_affine; ++ring) {
      double rad = R * (0.15 + 0.18 * ring);
      for (int i = 0; i < seeds && roots.size() < expect_affine; ++i) {
        double ang = 2 * M_PI * i / seeds + 0.0007 * ring;
        if (auto z = newton(std::polar(rad, ang))) try_add(*z);
      }
    }
  }
  if (roots.size() < expect_affine) {
    // final denser sweep
    for (int i = 0; i < 20000 && roots.size() < expect_affine; ++i) {
      double a = std::fmod(1.618033988749895 * i, 1.0) * 2 * M_PI;
      double rad = R * std::fmod(0.7548776662466927 * i, 1.0);
      if (auto z = newton(std::polar(rad, a))) try_add(*z);
    }
  }
  if (roots.size() != expect_affine)
    throw RootIsolationFailure("found " + std::to_string(roots.size()) + " of " +
                               std::to_string(expect_affine) + " period points");

  res.points = roots;
  res.total_points = roots.size() + (inf_fixed ? 1 : 0);

  // KS distance against the reference law; off-law points (including the
  // fixed point at infinity) count as missing mass.
  std::vector<double> xs;
  switch (law) {
    case ReferenceLaw::UniformCircle:
      for (const auto& z : roots)
        if (std::fabs(std::abs(z) - 1.0) < 0.05) {
          double a = std::arg(z);
          if (a < 0) a += 2 * M_PI;
          xs.push_back(a / (2 * M_PI));
        }
      break;
    case ReferenceLaw::Arcsine:
      for (const auto& z : roots)
        if (std::fabs(z.imag()) < 1e-6 && std::fabs(z.real()) <= 2.0000001) {
          double t = std::clamp(z.real() / 2.0, -1.0, 1.0);
          xs.push_back(0.5 + std::asin(t) / M_PI);
        }
      break;
    case ReferenceLaw::Dirac: {
      size_t at = 0;
      for (const auto& z : roots)
        if (std::abs(z - dirac_point) < 1e-9) ++at;
      res.on_law_points = at;
      res.ks_distance =
          static_cast<double>(res.total_points - at) / static_cast<double>(res.total_points);
      return res;
    }
  }
  std::sort(xs.begin(), xs.end());
  res.on_law_points = xs.size();
  double N = static_cast<double>(res.total_points);
  double ks = 1.0 - static_cast<double>(xs.size()) / N;  // deficiency at the top
  for (size_t i = 0; i < xs.size(); ++i) {
    double Femp_hi = static_cast<double>(i + 1) / N;
    double Femp_lo = static_cast<double>(i) / N;
    ks = std::max(ks, std::fabs(Femp_hi - xs[i]));
    ks = std::max(ks, std::fabs(xs[i] - Femp_lo));
  }
  res.ks_distance = ks;
  return res;
}

}  // namespace arithdyn
