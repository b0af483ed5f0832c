#pragma once

#include <vector>

#include "nvfix/nmap.hpp"
#include "nvfix/region.hpp"

namespace nvfix {

/// k-fold cover of the circle, p(x) = k x mod 1. Deck group Z_k acts by
/// x -> x + j/k.
struct CyclicCover {
  int k = 1;

  Rational project(const Rational& x) const { return (Rational(k) * x).frac(); }
};

struct DeckElement {
  int j = 0;  // 0 <= j < k
};

/// An n-valued map on the cover circle with p^n o map = base o p.
struct LiftedMap {
  NValuedCircleMap map;
  CyclicCover cover;
  NValuedCircleMap base;
  /// Sheet chosen for each base strand at the origin; lifted strand i starts
  /// at (s_i(0) + sheets[i]) / k.
  std::vector<int> sheets;
};

constexpr long kDefaultMaxLiftEnumeration = 4096;

/// Every lift of `base`, found by trying all k^n sheet choices at the origin,
/// path-lifting each strand through the k blocks of the cover, and keeping
/// the candidates that close up into a valid n-valued map. Ordered by sheet
/// choice (lexicographic). Throws InvalidArgument when k^n exceeds
/// `max_enumeration`.
std::vector<LiftedMap> lift_map(const NValuedCircleMap& base, CyclicCover cover,
                                long max_enumeration = kDefaultMaxLiftEnumeration);

/// Post-composition with the deck translation by alpha.j / k.
LiftedMap deck_act(DeckElement alpha, const LiftedMap& lift);

/// p applied to lift(x) equals base(p(x)) as sets.
bool commutes_at(const LiftedMap& lift, const Rational& x);

/// p^{-1}(region).
OpenArcSet preimage(const OpenArcSet& region, CyclicCover cover);

struct AveragingReport {
  int k = 1;
  long base_index = 0;                 // index_schirmer(base, U)
  long base_index_crossing = 0;        // index_crossing(base, U)
  std::vector<long> translate_indices; // ind(alpha lift, p^{-1} U) per alpha
  std::vector<bool> translate_admissible;
  long deck_sum = 0;
  bool divisible = false;              // k | deck_sum

  bool holds() const;
};

/// ind(f, U) = (1/k) sum_alpha ind(alpha lift, p^{-1} U), checked with the
/// first lift found. Throws NoLiftExists or NotAdmissible.
AveragingReport verify_averaging(const NValuedCircleMap& base, CyclicCover cover, const OpenArcSet& region,
                                 long max_enumeration = kDefaultMaxLiftEnumeration);

struct LefschetzAveragingReport {
  int k = 1;
  long base_lefschetz = 0;
  std::vector<long> translate_lefschetz;
  long sum = 0;

  bool holds() const { return sum % k == 0 && sum / k == base_lefschetz; }
};

/// L(f) = (1/k) sum_alpha L(alpha lift). Throws NoLiftExists.
LefschetzAveragingReport verify_lefschetz_averaging(const NValuedCircleMap& base, CyclicCover cover,
                                                    long max_enumeration = kDefaultMaxLiftEnumeration);

}  // namespace nvfix
