#ifndef ARITHDYN_FREENESS_HPP
#define ARITHDYN_FREENESS_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "arithdyn/henon.hpp"
#include "arithdyn/p1dyn.hpp"
#include "arithdyn/skewprod.hpp"

namespace arithdyn {

// A word over the two-letter alphabet {F, G}; letters[0] is the outermost
// map: [F, G] denotes the composition F o G.
struct Word {
  std::vector<int> letters;  // 0 = F, 1 = G
  std::string str() const;
  bool operator==(const Word& o) const { return letters == o.letters; }
};

using DynSystem = std::variant<RationalMapP1, SplitEndo, HenonMap, SkewProduct>;

// Exact composition of the word; throws MismatchedKinds / DegreeBudgetExceeded.
DynSystem compose_word(const Word& w, const DynSystem& F, const DynSystem& G);

bool dyn_equal(const DynSystem& a, const DynSystem& b);
long dyn_degree(const DynSystem& a);
std::string dyn_str(const DynSystem& a);

struct RelationCertificate {
  Word w1, w2;
  DynSystem composed;   // the common composed map
  bool equal_length;    // which freeness notion triggered
  bool verified;        // exact coefficient identity re-checked
};

// Search word pairs up to max_len (equal-length pairs always; degree-matched
// unequal lengths as well), prefiltered by exact evaluation at `samples`
// seeded random points, confirmed by exact coefficient comparison.
std::optional<RelationCertificate> find_relation(const DynSystem& F, const DynSystem& G,
                                                 int max_len, int samples = 5);

// Exhaustive rational box search for points preperiodic under both maps.
std::vector<P1Point> shared_preperiodic_points(const RationalMapP1& F, const RationalMapP1& G,
                                               double height_cutoff, long denominator_cutoff);
std::vector<A2Point> shared_preperiodic_points(const SkewProduct& F, const SkewProduct& G,
                                               double height_cutoff, long denominator_cutoff);
std::vector<A2Point> shared_periodic_points(const HenonMap& F, const HenonMap& G,
                                            double height_cutoff, long denominator_cutoff);

}  // namespace arithdyn

#endif
