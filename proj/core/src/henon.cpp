#include "arithdyn/henon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "arithdyn/errors.hpp"
#include "arithdyn/factor.hpp"
#include "arithdyn/padic.hpp"

namespace arithdyn {

namespace {
constexpr size_t kBitBudget = 1u << 20;
constexpr int kPrescanSteps = 64;

Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }
}  // namespace

HenonMap::HenonMap(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("henon map needs at least one factor");
  d_ = 1;
  for (const Factor& f : factors_) {
    if (f.P.degree() < 2) throw DegreeOne("henon factor polynomial must have degree >= 2");
    if (f.delta == 0) throw ZeroInput("henon factor delta must be nonzero");
    d_ *= f.P.degree();
  }
}

A2Point HenonMap::forward(const A2Point& p) const {
  A2Point cur = p;
  for (const Factor& f : factors_) {
    Rat ny = f.P.eval(cur.y) - f.delta * cur.x;
    cur = A2Point{cur.y, std::move(ny)};
  }
  return cur;
}

A2Point HenonMap::backward(const A2Point& p) const {
  A2Point cur = p;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    Rat nx = (it->P.eval(cur.x) - cur.y) / it->delta;
    cur = A2Point{std::move(nx), cur.x};
  }
  return cur;
}

HenonMap HenonMap::compose(const HenonMap& inner) const {
  std::vector<Factor> fs = inner.factors_;
  fs.insert(fs.end(), factors_.begin(), factors_.end());
  return HenonMap(std::move(fs));
}

const HenonMap& HenonMap::inverse_conjugate() const {
  if (!invconj_) {
    std::vector<Factor> inv;
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
      inv.push_back({it->P / it->delta, Rat(1) / it->delta});
    invconj_ = std::make_shared<HenonMap>(std::move(inv));
  }
  return *invconj_;
}

bool HenonMap::operator==(const HenonMap& o) const {
  if (factors_.size() != o.factors_.size()) return false;
  for (size_t i = 0; i < factors_.size(); ++i)
    if (!(factors_[i].P == o.factors_[i].P) || factors_[i].delta != o.factors_[i].delta)
      return false;
  return true;
}

std::string HenonMap::str() const {
  std::string s = "henon:";
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += ";";
    s += " P = " + factors_[i].P.str("y") + ", delta = " + rat_string(factors_[i].delta);
  }
  return s;
}

PlaceSet bad_places(const HenonMap& h) {
  PlaceSet out;
  out.insert(Place::archimedean());
  auto add = [&](const Int& n) {
    if (n == 0) return;
    Int m = n < 0 ? Int(-n) : n;
    if (m == 1) return;
    for (auto& [p, e] : factor_integer(m)) out.insert(Place::finite(p));
  };
  for (const auto& f : h.factors()) {
    for (const Rat& a : f.P.coeffs()) add(Int(a.get_den()));
    add(Int(f.P.lead().get_num()));
    add(Int(f.delta.get_num()));
    add(Int(f.delta.get_den()));
  }
  return out;
}

A2Point henon_iterate(const HenonMap& h, const A2Point& p, long n) {
  A2Point cur = p;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) {
    cur = n > 0 ? h.forward(cur) : h.backward(cur);
    if (bit_size(cur.x) + bit_size(cur.y) > kBitBudget)
      throw CoefficientBlowup("henon orbit coefficients past bit budget");
  }
  return cur;
}

namespace {

// --- archimedean analysis ---

double arch_escape_radius(const HenonMap& h) {
  // spec formula: per factor max(1, sum |coefficients| + |delta| + 1),
  // then enlarged until the relative one-step correction is < 1/4.
  double R = 1.0;
  for (const auto& f : h.factors()) {
    double s = 1.0 + std::fabs(to_double(f.delta));
    for (const Rat& a : f.P.coeffs()) s += std::fabs(to_double(a));
    R = std::max(R, s);
  }
  auto eps_at = [&](double radius) {
    double worst = 0.0;
    for (const auto& f : h.factors()) {
      int d = f.P.degree();
      double lead = std::fabs(to_double(f.P.lead()));
      double e = 0.0;
      for (int i = 0; i < d; ++i)
        e += std::fabs(to_double(f.P[i])) / lead * std::pow(radius, i - d);
      e += std::fabs(to_double(f.delta)) / lead * std::pow(radius, 1 - d);
      worst = std::max(worst, e);
    }
    return worst;
  };
  while (eps_at(R) >= 0.25) R *= 2;
  return R;
}

// log+ ||h(q)|| <= d log+ ||q|| + C1 at the archimedean place.
double arch_c1(const HenonMap& h) {
  double c = 0.0;
  for (const auto& f : h.factors()) {
    double s = std::fabs(to_double(f.delta));
    for (const Rat& a : f.P.coeffs()) s += std::fabs(to_double(a));
    double cj = std::log(std::max(1.0, s));
    c = c * f.P.degree() + cj;  // C = sum_j c_j prod_{k>j} d_k
  }
  return c;
}

struct NumGreen {
  double value;
  double err;
};

// G+ of an exact point q already in the forward escape region
// (|y| >= |x|, |y| > 2R+1), by iterating in log coordinates.
NumGreen arch_escape_green(const HenonMap& h, const A2Point& q, double tol) {
  double L = log_abs(q.y);
  double Lx = q.x == 0 ? -1e300 : log_abs(q.x);
  double sy = q.y < 0 ? -1.0 : 1.0;
  double sx = q.x < 0 ? -1.0 : (q.x == 0 ? 0.0 : 1.0);
  int D = h.degree();
  double ell_bound = 1.0;
  for (const auto& f : h.factors()) ell_bound += std::fabs(log_abs(f.P.lead()));
  int K = 1;
  while (std::pow(static_cast<double>(D), -K) * (ell_bound + 1.0) / (D - 1) > tol / 2 && K < 200)
    ++K;
  for (int k = 0; k < K; ++k) {
    for (const auto& f : h.factors()) {
      int d = f.P.degree();
      double lead = to_double(f.P.lead());
      double c = 1.0, cabs = 0.0;
      for (int i = 0; i < d; ++i) {
        if (f.P[i] == 0) continue;
        double t = to_double(f.P[i]) / lead * std::pow(sy, i - d) * std::exp((i - d) * L);
        c += t;
        cabs += std::fabs(t);
      }
      if (sx != 0.0) {
        double t = -to_double(f.delta) / lead * sx * std::pow(sy, -d) * std::exp(Lx - d * L);
        c += t;
        cabs += std::fabs(t);
      }
      if (cabs > 0.5) throw PrecisionExhausted("escape region correction too large");
      double nL = d * L + std::log(std::fabs(lead)) + std::log(std::fabs(c));
      double nsy = (lead < 0 ? -1.0 : 1.0) * std::pow(sy, d) * (c < 0 ? -1.0 : 1.0);
      Lx = L;
      sx = sy;
      L = nL;
      sy = nsy;
    }
  }
  double dk = std::pow(static_cast<double>(D), -static_cast<double>(K));
  double tail = dk * (ell_bound + 1.0) / (D - 1);
  double round_err = (K + 4) * 1e-14;
  return NumGreen{dk * L, tail + round_err};
}

bool arch_in_escape_region(const A2Point& p, double R) {
  Rat ax = rat_abs(p.x), ay = rat_abs(p.y);
  if (ay < ax) return false;
  return to_double(ay) > 2 * R + 1;
}

// --- finite-place analysis ---

struct OrdPoint {
  long ox, oy;  // valuations; kBig means zero to precision
  static constexpr long kBig = 1L << 40;
};

bool good_reduction_at(const HenonMap& h, const Int& p) {
  for (const auto& f : h.factors()) {
    for (const Rat& a : f.P.coeffs())
      if (a != 0 && ord_p(a, p) < 0) return false;
    if (ord_p(f.P.lead(), p) != 0) return false;
    if (ord_p(f.delta, p) != 0) return false;
  }
  return true;
}

double fin_c1(const HenonMap& h, const Int& p) {
  double logp = log_abs(p);
  double c = 0.0;
  for (const auto& f : h.factors()) {
    long worst = 0;
    for (const Rat& a : f.P.coeffs())
      if (a != 0) worst = std::min(worst, ord_p(a, p));
    worst = std::min(worst, ord_p(f.delta, p));
    double cj = -static_cast<double>(worst) * logp;
    c = c * f.P.degree() + cj;
  }
  return c;
}

// One composite step in valuation space under strict ultrametric dominance of
// every factor's leading term; false when dominance fails somewhere.
bool ord_step_dominant(const HenonMap& h, const Int& p, OrdPoint& o) {
  for (const auto& f : h.factors()) {
    int d = f.P.degree();
    long olead = ord_p(f.P.lead(), p);
    long t_lead = olead + d * o.oy;
    long others = OrdPoint::kBig;
    for (int i = 0; i < d; ++i)
      if (f.P[i] != 0) others = std::min(others, ord_p(f.P[i], p) + i * o.oy);
    if (o.ox < OrdPoint::kBig) others = std::min(others, ord_p(f.delta, p) + o.ox);
    if (!(t_lead < others)) return false;
    o = OrdPoint{o.oy, t_lead};
  }
  return true;
}

// valuation of the accumulated leading coefficients over one composite step
long fin_kappa(const HenonMap& h, const Int& p) {
  long kappa = 0;
  for (const auto& f : h.factors()) kappa = kappa * f.P.degree() + ord_p(f.P.lead(), p);
  return kappa;
}

struct PadicA2 {
  PadicField::Val x, y;
};

PadicA2 padic_step(const PadicField& F, const HenonMap& h, const PadicA2& p) {
  PadicA2 cur = p;
  for (const auto& f : h.factors()) {
    PadicField::Val ny = F.sub(F.eval_poly(f.P, cur.y), F.scale(cur.x, f.delta));
    cur = PadicA2{cur.y, ny};
  }
  return cur;
}

OrdPoint ords_of(const PadicField& F, const PadicA2& p) {
  OrdPoint o;
  o.ox = p.x.zero ? OrdPoint::kBig : F.ord(p.x);
  o.oy = p.y.zero ? OrdPoint::kBig : F.ord(p.y);
  return o;
}

// G+ at a finite place; caller has ruled out periodicity.
LocalGreen green_plus_fin(const HenonMap& h, const A2Point& p0, const Place& v, double tol) {
  const Int& p = v.prime();
  double logp = log_abs(p);
  bool good = good_reduction_at(h, p);
  long ox0 = p0.x == 0 ? OrdPoint::kBig : ord_p(p0.x, p);
  long oy0 = p0.y == 0 ? OrdPoint::kBig : ord_p(p0.y, p);
  if (good && ox0 >= 0 && oy0 >= 0) {
    return LocalGreen{v, Rat(0), 0.0, 0.0, true};  // integral orbit stays integral
  }
  int D = h.degree();
  double C1 = fin_c1(h, p);
  long kappa = fin_kappa(h, p);
  int digits = 64;
  for (int attempt = 0; attempt < 5; ++attempt) {
    try {
      PadicField F(p, digits);
      PadicA2 cur{F.from_rat(p0.x), F.from_rat(p0.y)};
      Rat dpow(1);
      for (int k = 0; k <= 200; ++k) {
        OrdPoint o = ords_of(F, cur);
        // exact escape: strict dominance through three simulated composite
        // steps with strictly decreasing oy persists forever (each dominance
        // margin is an increasing affine function of -oy).
        if (o.oy < 0 && o.oy <= o.ox) {
          OrdPoint sim = o;
          bool ok = true;
          long prev = sim.oy;
          for (int t = 0; t < 3 && ok; ++t) {
            ok = ord_step_dominant(h, p, sim) && sim.oy < prev;
            prev = sim.oy;
          }
          if (ok) {
            Rat expo = -(Rat(o.oy) + Rat(kappa, D - 1)) / dpow;
            return LocalGreen{v, expo, 0.0, 0.0, false};
          }
        }
        long m = std::min(o.ox, o.oy);
        double logplus = m >= 0 ? 0.0 : -static_cast<double>(m) * logp;
        double bound = to_double(Rat(1) / dpow) * (logplus + C1 / (D - 1));
        if (bound <= tol) return LocalGreen{v, Rat(0), 0.0, bound, false};
        cur = padic_step(F, h, cur);
        dpow *= D;
      }
      throw PrecisionExhausted("finite-place green did not resolve");
    } catch (const PrecisionExhausted&) {
      if (attempt == 4) throw;
      digits *= 2;
    }
  }
  throw PrecisionExhausted("unreachable");
}

LocalGreen green_plus_arch(const HenonMap& h, const A2Point& p0, double tol) {
  Place v = Place::archimedean();
  double R = arch_escape_radius(h);
  double C1 = arch_c1(h);
  int D = h.degree();
  A2Point cur = p0;
  double dpow = 1.0;
  for (int k = 0; k <= 400; ++k) {
    if (arch_in_escape_region(cur, R)) {
      NumGreen g = arch_escape_green(h, cur, tol * dpow);
      return LocalGreen{v, Rat(0), g.value / dpow, g.err / dpow + 1e-13, false};
    }
    double logplus = std::max({0.0, cur.x == 0 ? 0.0 : log_abs(cur.x),
                               cur.y == 0 ? 0.0 : log_abs(cur.y)});
    double bound = (logplus + C1 / (D - 1)) / dpow;
    if (bound <= tol) return LocalGreen{v, Rat(0), 0.0, bound, false};
    A2Point next = h.forward(cur);
    if (bit_size(next.x) + bit_size(next.y) > kBitBudget) {
      // bounded real orbit with denominators inflating at a finite place:
      // stop here and report the still-certified (if looser) tail
      return LocalGreen{v, Rat(0), 0.0, bound, false};
    }
    cur = std::move(next);
    dpow *= D;
  }
  throw PrecisionExhausted("archimedean green did not resolve");
}

LocalGreen green_plus_at(const HenonMap& h, const A2Point& p, const Place& v, double tol,
                         bool known_nonperiodic) {
  if (!known_nonperiodic) {
    // bounded exact pre-scan: a revisit certifies G+ = G- = 0 at every place
    std::set<A2Point> seen;
    A2Point cur = p;
    for (int i = 0; i < kPrescanSteps; ++i) {
      if (!seen.insert(cur).second) return LocalGreen{v, Rat(0), 0.0, 0.0, true};
      if (bit_size(cur.x) + bit_size(cur.y) > kBitBudget / 4) break;
      cur = h.forward(cur);
    }
  }
  if (v.is_archimedean()) return green_plus_arch(h, p, tol);
  return green_plus_fin(h, p, v, tol);
}

A2Point swap_point(const A2Point& p) { return A2Point{p.y, p.x}; }

PlaceSet relevant_places(const HenonMap& h, const A2Point& p) {
  PlaceSet places = bad_places(h);
  auto add = [&](const Rat& r) {
    if (r == 0) return;
    Rat q = r;
    q.canonicalize();
    Int den(q.get_den());
    if (den == 1) return;
    for (auto& [pp, e] : factor_integer(den)) places.insert(Place::finite(pp));
  };
  add(p.x);
  add(p.y);
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

LocalGreen local_max(const LocalGreen& a, const LocalGreen& b) {
  if (a.exact_zero && b.exact_zero) return a;
  double va = a.exact_zero ? 0.0 : a.value();
  double vb = b.exact_zero ? 0.0 : b.value();
  LocalGreen out = va >= vb ? a : b;
  out.err = a.err + b.err;
  out.exact_zero = false;
  return out;
}

}  // namespace

GreenPairAt green_henon(const HenonMap& h, const A2Point& p, const Place& v, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  GreenPairAt out;
  out.plus = green_plus_at(h, p, v, tol, false);
  if (out.plus.exact_zero) {
    out.minus = out.plus;  // revisit detected: periodic, both vanish
    return out;
  }
  out.minus = green_plus_at(h.inverse_conjugate(), swap_point(p), v, tol, false);
  return out;
}

HenonHeights canonical_heights_henon(const HenonMap& h, const A2Point& p, double tol) {
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  HenonHeights out;
  if (is_periodic_henon(h, p).periodic) {
    out.hhat = HeightValue::zero();
    out.htilde = HeightValue::zero();
    return out;
  }
  PlaceSet places = relevant_places(h, p);
  double tol_each = tol / (2.0 * static_cast<double>(places.size()));
  out.hhat.exact_zero = false;
  out.htilde.exact_zero = false;
  for (const Place& v : places) {
    LocalGreen gp = green_plus_at(h, p, v, tol_each, true);
    LocalGreen gm = green_plus_at(h.inverse_conjugate(), swap_point(p), v, tol_each, true);
    fold_local(out.hhat, gp);
    fold_local(out.hhat, gm);
    fold_local(out.htilde, local_max(gp, gm));
  }
  return out;
}

double henon_height_gap(const HenonMap& h) {
  if (h.height_gap_) return *h.height_gap_;
  std::mt19937_64 rng(0xbadcafeull);
  double gap = 0.0;
  for (int i = 0; i < 60; ++i) {
    A2Point p{Rat(static_cast<long>(rng() % 41) - 20), Rat(static_cast<long>(rng() % 41) - 20)};
    PlaceSet places = relevant_places(h, p);
    HeightValue ht;
    bool periodic_like = false;
    for (const Place& v : places) {
      LocalGreen gp = green_plus_at(h, p, v, 1e-6, false);
      if (gp.exact_zero) {
        periodic_like = true;
        break;
      }
      LocalGreen gm = green_plus_at(h.inverse_conjugate(), swap_point(p), v, 1e-6, false);
      fold_local(ht, local_max(gp, gm));
    }
    double htv = periodic_like ? 0.0 : ht.total();
    double hw = weil_height_affine({p.x, p.y}).total();
    gap = std::max(gap, std::fabs(htv - hw));
  }
  h.height_gap_ = gap;
  return gap;
}

PeriodCertificate is_periodic_henon(const HenonMap& h, const A2Point& p) {
  double cutoff = henon_height_gap(h) + 2.0;
  std::map<A2Point, long> seen;
  A2Point cur = p;
  long n = 0;
  while (true) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      if (it->second != 0) throw std::logic_error("henon orbit tail on an automorphism");
      return PeriodCertificate{true, n};
    }
    if (weil_height_affine({cur.x, cur.y}).total() > cutoff)
      return PeriodCertificate{false, 0};
    seen.emplace(cur, n);
    cur = h.forward(cur);
    ++n;
    if (bit_size(cur.x) + bit_size(cur.y) > kBitBudget)
      return PeriodCertificate{false, 0};  // far past any height cutoff
  }
}

JuliaResult filled_julia_verdict(const HenonMap& h, const A2Point& p, const Place& v,
                                 long maxiter) {
  if (v.is_finite()) {
    const Int& pr = v.prime();
    if (good_reduction_at(h, pr) && (p.x == 0 || ord_p(p.x, pr) >= 0) &&
        (p.y == 0 || ord_p(p.y, pr) >= 0))
      return JuliaResult{JuliaVerdict::Bounded, 0};
    PadicField F(pr, 128);
    const HenonMap& inv = h.inverse_conjugate();
    PadicA2 fw{F.from_rat(p.x), F.from_rat(p.y)};
    PadicA2 bw{F.from_rat(p.y), F.from_rat(p.x)};
    for (long k = 0; k < maxiter; ++k) {
      try {
        OrdPoint of = ords_of(F, fw), ob = ords_of(F, bw);
        OrdPoint s1 = of;
        if (of.oy < 0 && of.oy <= of.ox && ord_step_dominant(h, pr, s1) && s1.oy < of.oy)
          return JuliaResult{JuliaVerdict::Escaped, k};
        OrdPoint s2 = ob;
        if (ob.oy < 0 && ob.oy <= ob.ox && ord_step_dominant(inv, pr, s2) && s2.oy < ob.oy)
          return JuliaResult{JuliaVerdict::Escaped, k};
        fw = padic_step(F, h, fw);
        bw = padic_step(F, inv, bw);
      } catch (const PrecisionExhausted&) {
        return JuliaResult{JuliaVerdict::Undecided, k};
      }
    }
    return JuliaResult{JuliaVerdict::Undecided, maxiter};
  }
  double R = arch_escape_radius(h);
  const HenonMap& inv = h.inverse_conjugate();
  double xf = to_double(p.x), yf = to_double(p.y);
  double xb = to_double(p.y), yb = to_double(p.x);
  auto step = [](const HenonMap& m, double& x, double& y) {
    for (const auto& f : m.factors()) {
      double ny = -to_double(f.delta) * x;
      double pw = 1;
      for (int i = 0; i <= f.P.degree(); ++i) {
        ny += to_double(f.P[i]) * pw;
        pw *= y;
      }
      x = y;
      y = ny;
    }
  };
  for (long k = 0; k < maxiter; ++k) {
    if (std::fabs(yf) >= std::fabs(xf) && std::fabs(yf) > 2 * R + 1)
      return JuliaResult{JuliaVerdict::Escaped, k};
    if (std::fabs(yb) >= std::fabs(xb) && std::fabs(yb) > 2 * R + 1)
      return JuliaResult{JuliaVerdict::Escaped, k};
    step(h, xf, yf);
    step(inv, xb, yb);
    if (!std::isfinite(yf) || !std::isfinite(yb)) return JuliaResult{JuliaVerdict::Escaped, k};
  }
  return JuliaResult{JuliaVerdict::Undecided, maxiter};
}

}  // namespace arithdyn
