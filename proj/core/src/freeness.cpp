#include "arithdyn/freeness.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>

#include "arithdyn/errors.hpp"

namespace arithdyn {

std::string Word::str() const {
  std::string s;
  for (int l : letters) s += (l == 0 ? 'F' : 'G');
  return s;
}

namespace {

constexpr long kDegreeBudget = 4096;

template <class T>
T compose_word_t(const Word& w, const T& F, const T& G) {
  if (w.letters.empty()) throw std::invalid_argument("empty word");
  T acc = w.letters.back() == 0 ? F : G;
  for (size_t i = w.letters.size() - 1; i-- > 0;) {
    const T& next = w.letters[i] == 0 ? F : G;
    acc = next.compose(acc);
  }
  return acc;
}

long degree_of(const RationalMapP1& f) { return f.degree(); }
long degree_of(const SplitEndo& f) {
  long d = 1;
  for (const auto& c : f.comps) d = std::max<long>(d, c.degree());
  return d;
}
long degree_of(const HenonMap& f) { return f.degree(); }
long degree_of(const SkewProduct& f) { return f.degree(); }

// evaluation state per kind, for the sampling prefilter
struct Sampler {
  std::mt19937_64 rng{0xa11ce5ull};
  Rat next_rat() {
    long num = static_cast<long>(rng() % 131072) - 65536;
    long den = static_cast<long>(rng() % 7) + 1;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
};

// evaluate a word at a sample point without composing symbolically
P1Point eval_word(const Word& w, const RationalMapP1& F, const RationalMapP1& G,
                  const P1Point& x) {
  P1Point cur = x;
  for (size_t i = w.letters.size(); i-- > 0;) cur = (w.letters[i] == 0 ? F : G).eval(cur);
  return cur;
}

std::vector<P1Point> eval_word(const Word& w, const SplitEndo& F, const SplitEndo& G,
                               const std::vector<P1Point>& x) {
  std::vector<P1Point> cur = x;
  for (size_t i = w.letters.size(); i-- > 0;) cur = (w.letters[i] == 0 ? F : G).eval(cur);
  return cur;
}

A2Point eval_word(const Word& w, const HenonMap& F, const HenonMap& G, const A2Point& x) {
  A2Point cur = x;
  for (size_t i = w.letters.size(); i-- > 0;) cur = (w.letters[i] == 0 ? F : G).forward(cur);
  return cur;
}

A2Point eval_word(const Word& w, const SkewProduct& F, const SkewProduct& G, const A2Point& x) {
  A2Point cur = x;
  for (size_t i = w.letters.size(); i-- > 0;) cur = (w.letters[i] == 0 ? F : G).eval(cur);
  return cur;
}

template <class T, class PointGen, class PointEq>
std::optional<RelationCertificate> find_relation_t(const T& F, const T& G, int max_len,
                                                   int samples, PointGen gen, PointEq eq) {
  long dF = degree_of(F), dG = degree_of(G);
  if (dyn_equal(DynSystem(F), DynSystem(G))) {
    RelationCertificate cert{Word{{0}}, Word{{1}}, DynSystem(F), true, true};
    return cert;
  }
  // sample points, shared across all candidate pairs
  std::vector<decltype(gen())> pts;
  for (int i = 0; i < samples; ++i) pts.push_back(gen());

  // enumerate words of each length in lexicographic order (F < G)
  auto words_of_len = [&](int len) {
    std::vector<Word> out;
    for (long mask = 0; mask < (1L << len); ++mask) {
      Word w;
      for (int i = len - 1; i >= 0; --i) w.letters.push_back((mask >> i) & 1);
      out.push_back(std::move(w));
    }
    return out;
  };
  auto word_degree = [&](const Word& w) {
    long d = 1;
    for (int l : w.letters) {
      d *= (l == 0 ? dF : dG);
      if (d > kDegreeBudget) return d;
    }
    return d;
  };

  for (int total = 2; total <= 2 * max_len; ++total) {
    for (int l1 = 1; l1 <= std::min(total - 1, max_len); ++l1) {
      int l2 = total - l1;
      if (l2 < l1 || l2 > max_len) continue;
      std::vector<Word> ws1 = words_of_len(l1);
      std::vector<Word> ws2 = words_of_len(l2);
      for (const Word& w1 : ws1) {
        long d1 = word_degree(w1);
        if (d1 > kDegreeBudget)
          throw DegreeBudgetExceeded("word degree exceeds the search budget");
        for (const Word& w2 : ws2) {
          if (l1 == l2 && !(w1.letters < w2.letters)) continue;
          if (word_degree(w2) != d1) continue;
          bool maybe = true;
          for (const auto& pt : pts) {
            if (!eq(eval_word(w1, F, G, pt), eval_word(w2, F, G, pt))) {
              maybe = false;
              break;
            }
          }
          if (!maybe) continue;
          T c1 = compose_word_t(w1, F, G);
          T c2 = compose_word_t(w2, F, G);
          if (c1 == c2) {
            RelationCertificate cert{w1, w2, DynSystem(c1), l1 == l2, true};
            return cert;
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

DynSystem compose_word(const Word& w, const DynSystem& F, const DynSystem& G) {
  if (F.index() != G.index()) throw MismatchedKinds("compose_word: mixed system kinds");
  DynSystem out = std::visit(
      [&](const auto& f) -> DynSystem {
        using T = std::decay_t<decltype(f)>;
        const T& g = std::get<T>(G);
        T acc = compose_word_t(w, f, g);
        if (degree_of(acc) > kDegreeBudget)
          throw DegreeBudgetExceeded("composed word degree exceeds the budget");
        return DynSystem(std::move(acc));
      },
      F);
  return out;
}

bool dyn_equal(const DynSystem& a, const DynSystem& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b);
      },
      a);
}

long dyn_degree(const DynSystem& a) {
  return std::visit([](const auto& x) { return degree_of(x); }, a);
}

std::string dyn_str(const DynSystem& a) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SplitEndo>) {
          std::string s = "split:";
          for (size_t i = 0; i < x.comps.size(); ++i) {
            if (i) s += ";";
            s += " " + x.comps[i].str();
          }
          return s;
        } else {
          return x.str();
        }
      },
      a);
}

std::optional<RelationCertificate> find_relation(const DynSystem& F, const DynSystem& G,
                                                 int max_len, int samples) {
  if (F.index() != G.index()) throw MismatchedKinds("find_relation: mixed system kinds");
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  Sampler s;
  if (std::holds_alternative<RationalMapP1>(F)) {
    auto gen = [&]() { return P1Point::of(s.next_rat()); };
    auto eq = [](const P1Point& a, const P1Point& b) { return a == b; };
    return find_relation_t(std::get<RationalMapP1>(F), std::get<RationalMapP1>(G), max_len,
                           samples, gen, eq);
  }
  if (std::holds_alternative<SplitEndo>(F)) {
    const auto& f = std::get<SplitEndo>(F);
    auto gen = [&]() {
      std::vector<P1Point> pt;
      for (size_t i = 0; i < f.arity(); ++i) pt.push_back(P1Point::of(s.next_rat()));
      return pt;
    };
    auto eq = [](const std::vector<P1Point>& a, const std::vector<P1Point>& b) { return a == b; };
    return find_relation_t(f, std::get<SplitEndo>(G), max_len, samples, gen, eq);
  }
  if (std::holds_alternative<HenonMap>(F)) {
    auto gen = [&]() { return A2Point{s.next_rat(), s.next_rat()}; };
    auto eq = [](const A2Point& a, const A2Point& b) { return a == b; };
    return find_relation_t(std::get<HenonMap>(F), std::get<HenonMap>(G), max_len, samples, gen,
                           eq);
  }
  auto gen = [&]() { return A2Point{s.next_rat(), s.next_rat()}; };
  auto eq = [](const A2Point& a, const A2Point& b) { return a == b; };
  return find_relation_t(std::get<SkewProduct>(F), std::get<SkewProduct>(G), max_len, samples,
                         gen, eq);
}

namespace {

std::vector<Rat> box_rationals(double height_cutoff, long den_cutoff) {
  std::vector<Rat> out;
  for (long den = 1; den <= den_cutoff; ++den) {
    for (long num = -den_cutoff; num <= den_cutoff; ++num) {
      if (std::gcd(std::labs(num), den) != 1) continue;
      Rat x(num, den);
      if (weil_height(x).total() > height_cutoff + 1e-12) continue;
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<P1Point> shared_preperiodic_points(const RationalMapP1& F, const RationalMapP1& G,
                                               double height_cutoff, long denominator_cutoff) {
  if (height_cutoff <= 0 || denominator_cutoff <= 0)
    throw std::invalid_argument("cutoffs must be positive");
  std::vector<P1Point> out;
  if (is_preperiodic_p1(F, P1Point::infinity()).preperiodic &&
      is_preperiodic_p1(G, P1Point::infinity()).preperiodic)
    out.push_back(P1Point::infinity());
  for (const Rat& x : box_rationals(height_cutoff, denominator_cutoff)) {
    if (is_preperiodic_p1(F, x).preperiodic && is_preperiodic_p1(G, x).preperiodic)
      out.push_back(P1Point::of(x));
  }
  return out;
}

std::vector<A2Point> shared_preperiodic_points(const SkewProduct& F, const SkewProduct& G,
                                               double height_cutoff, long denominator_cutoff) {
  if (height_cutoff <= 0 || denominator_cutoff <= 0)
    throw std::invalid_argument("cutoffs must be positive");
  std::vector<Rat> base = box_rationals(height_cutoff, denominator_cutoff);
  std::vector<A2Point> out;
  for (const Rat& x : base)
    for (const Rat& y : base) {
      A2Point p{x, y};
      if (weil_height_affine({x, y}).total() > height_cutoff + 1e-12) continue;
      if (is_preperiodic_skew(F, p).preperiodic && is_preperiodic_skew(G, p).preperiodic)
        out.push_back(p);
    }
  return out;
}

std::vector<A2Point> shared_periodic_points(const HenonMap& F, const HenonMap& G,
                                            double height_cutoff, long denominator_cutoff) {
  if (height_cutoff <= 0 || denominator_cutoff <= 0)
    throw std::invalid_argument("cutoffs must be positive");
  std::vector<Rat> base = box_rationals(height_cutoff, denominator_cutoff);
  std::vector<A2Point> out;
  for (const Rat& x : base)
    for (const Rat& y : base) {
      A2Point p{x, y};
      if (weil_height_affine({x, y}).total() > height_cutoff + 1e-12) continue;
      if (is_periodic_henon(F, p).periodic && is_periodic_henon(G, p).periodic)
        out.push_back(p);
    }
  return out;
}

}  // namespace arithdyn
