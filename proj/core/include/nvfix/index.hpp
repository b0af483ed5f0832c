#pragma once

#include <vector>

#include "nvfix/homotopy.hpp"
#include "nvfix/nmap.hpp"
#include "nvfix/region.hpp"

namespace nvfix {

/// Isolated fixed point x in s_i(x) (mod 1).
///
/// At a breakpoint the strand has two one-sided slopes; the local index is
/// (sign(1 - slope_left) + sign(1 - slope_right)) / 2, which is sign(1 - slope)
/// whenever both sides agree. `degenerate` marks the non-transverse case where
/// the graph touches the diagonal without crossing it (local index 0).
struct FixedPointRecord {
  CirclePoint location;
  int strand = 0;
  Rational slope_left;
  Rational slope_right;
  int local_index = 0;
  bool degenerate = false;

  const Rational& slope() const { return slope_right; }
};

/// Closed arc [start, start + length] of fixed points of one strand (the
/// strand label is the one at `start`). length == 1 means the whole circle.
struct DegenerateInterval {
  int strand = 0;
  Rational start;
  Rational length;

  bool contains(const Rational& x) const;
};

struct FixedPointSet {
  std::vector<FixedPointRecord> points;      // sorted by location
  std::vector<DegenerateInterval> intervals;

  bool fix_finite() const { return intervals.empty(); }
  bool empty() const { return points.empty() && intervals.empty(); }
};

/// Every fixed point of the map, exactly once. Points on the closure of a
/// degenerate interval are reported only through the interval.
FixedPointSet fixed_points(const NValuedCircleMap& map);

/// True iff x is a fixed point.
bool is_fixed(const NValuedCircleMap& map, const Rational& x);

/// True iff the map has a fixed point in the (open) region.
bool has_fixed_point_in(const FixedPointSet& fix, const OpenArcSet& region);

/// No fixed point (isolated, or in the closure of a degenerate interval)
/// meets the boundary of the region.
bool is_admissible(const NValuedCircleMap& map, const OpenArcSet& region);
bool is_admissible(const FixedPointSet& fix, const OpenArcSet& region);

struct Perturbation {
  NValuedCircleMap map;
  StrandHomotopy homotopy;
  Rational epsilon;  // 0 when the map was already fix-finite
};

/// Replaces each degenerate segment s(t) = t + m by a zigzag of height epsilon
/// that crosses the diagonal at both ends and the midpoint. epsilon = 2^-k is
/// the first power of two below min(1/4, half the smallest strand gap over the
/// modified segments, half the smallest nonzero |s_i(t) - t - m| at
/// breakpoints). Leaves fix-finite maps untouched.
Perturbation fix_finite_perturb(const NValuedCircleMap& map);

/// Local index by construction: perturb to a fix-finite map, isolate each
/// fixed point in the region by a proper arc, split there, and add up the
/// classical index of the single fixed branch. Throws NotAdmissible.
long index_schirmer(const NValuedCircleMap& map, const OpenArcSet& region);

/// Local index as a boundary sign count: for every continued branch b over an
/// arc (a, a + L) and every integer m, adds (sign g(a) - sign g(a + L)) / 2
/// with g(u) = b(u) - u - m. Never perturbs. Throws NotAdmissible.
long index_crossing(const NValuedCircleMap& map, const OpenArcSet& region);

/// ind(f, empty set); always 0.
long empty_region_index(const NValuedCircleMap& map);

/// Classical index of a single branch at an interior point u where it is
/// fixed, from its one-sided slopes.
int classical_local_index(const PlFunction& branch, const Rational& u);

/// Lifted parameters u in the open interval (lo, hi) with branch(u) - u integral.
/// Throws Degenerate if the branch is fixed on a whole piece there.
std::vector<Rational> branch_fixed_points(const PlFunction& branch, const Rational& lo, const Rational& hi);

}  // namespace nvfix
