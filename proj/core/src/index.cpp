#include "nvfix/index.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "nvfix/errors.hpp"

namespace nvfix {

namespace {

int sgn(const Rational& r) { return r.sign(); }

// Distance from r to the nearest integer.
Rational integer_distance(const Rational& r) {
  const Rational f = r.frac();
  return min(f, Rational(1) - f);
}

bool is_degenerate_segment(const Segment& seg) {
  return seg.slope() == 1 && (seg.v0 - seg.t0).is_integer();
}

struct Run {
  int strand;
  Rational a, b;
};

std::vector<DegenerateInterval> collect_intervals(const NValuedCircleMap& map) {
  std::vector<Run> runs;
  for (int i = 0; i < map.n(); ++i) {
    const auto& s = map.strand(i);
    for (std::size_t k = 0; k < s.segment_count(); ++k) {
      const Segment seg = s.segment(k);
      if (!is_degenerate_segment(seg)) continue;
      if (!runs.empty() && runs.back().strand == i && runs.back().b == seg.t0) {
        runs.back().b = seg.t1;
      } else {
        runs.push_back({i, seg.t0, seg.t1});
      }
    }
  }
  // successor[r] = run continuing r across the seam.
  std::vector<int> successor(runs.size(), -1);
  std::vector<bool> has_predecessor(runs.size(), false);
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (runs[r].b != 1) continue;
    const int next_strand = map.monodromy()[static_cast<std::size_t>(runs[r].strand)];
    for (std::size_t q = 0; q < runs.size(); ++q) {
      if (runs[q].strand == next_strand && runs[q].a.sign() == 0) {
        successor[r] = static_cast<int>(q);
        has_predecessor[q] = true;
      }
    }
  }
  std::vector<DegenerateInterval> out;
  std::vector<bool> used(runs.size(), false);
  const auto walk = [&](std::size_t first) {
    Rational length;
    for (int r = static_cast<int>(first); r >= 0 && !used[static_cast<std::size_t>(r)];
         r = successor[static_cast<std::size_t>(r)]) {
      used[static_cast<std::size_t>(r)] = true;
      length += runs[static_cast<std::size_t>(r)].b - runs[static_cast<std::size_t>(r)].a;
    }
    out.push_back({runs[first].strand, runs[first].a, min(length, Rational(1))});
  };
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (!has_predecessor[r]) walk(r);
  }
  // Remaining runs form closed loops around the circle.
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (!used[r]) walk(r);
  }
  std::sort(out.begin(), out.end(),
            [](const DegenerateInterval& x, const DegenerateInterval& y) { return x.start < y.start; });
  return out;
}

// Integers m with lo <= m <= hi, as Rationals.
std::vector<Rational> integers_between(const Rational& lo, const Rational& hi) {
  std::vector<Rational> out;
  for (mpz_class m = lo.ceil(); from_integer(m) <= hi; ++m) out.push_back(from_integer(m));
  return out;
}

Rational choose_cut_point(const NValuedCircleMap& map, const FixedPointSet& fix) {
  std::vector<Rational> special;
  for (const auto& p : fix.points) special.push_back(p.location.coordinate());
  for (const auto& iv : fix.intervals) {
    special.push_back(iv.start);
    special.push_back((iv.start + iv.length).frac());
  }
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());

  std::vector<Rational> candidates{Rational(0)};
  for (std::size_t i = 0; i < special.size(); ++i) {
    const Rational next = i + 1 < special.size() ? special[i + 1] : special.front() + 1;
    candidates.push_back(((special[i] + next) / 2).frac());
  }
  for (const auto& c : candidates) {
    if (!is_fixed(map, c)) return c;
  }
  // Every candidate is fixed (e.g. the identity); the whole-circle sum is
  // still exact because both ends of the cut are the same point.
  return Rational(0);
}

}  // namespace

bool DegenerateInterval::contains(const Rational& x) const {
  if (length >= 1) return true;
  return (x - start).frac() <= length;
}

FixedPointSet fixed_points(const NValuedCircleMap& map) {
  FixedPointSet out;
  out.intervals = collect_intervals(map);
  const Permutation pred = inverse(map.monodromy());

  const auto in_interval = [&](const Rational& x) {
    return std::any_of(out.intervals.begin(), out.intervals.end(),
                       [&](const DegenerateInterval& iv) { return iv.contains(x); });
  };

  for (int i = 0; i < map.n(); ++i) {
    const auto& s = map.strand(i);
    std::set<Rational> seen;
    for (std::size_t k = 0; k < s.segment_count(); ++k) {
      const Segment seg = s.segment(k);
      if (seg.slope() == 1) continue;
      const Rational g0 = seg.v0 - seg.t0;
      const Rational g1 = seg.v1 - seg.t1;
      for (const auto& m : integers_between(min(g0, g1), max(g0, g1))) {
        const Rational t = seg.t0 + (m - g0) * (seg.t1 - seg.t0) / (g1 - g0);
        if (t == 1 || seen.count(t) || in_interval(t)) continue;
        seen.insert(t);
        FixedPointRecord rec;
        rec.location = CirclePoint(t);
        rec.strand = i;
        rec.slope_right = s.slope_right(t);
        rec.slope_left = t.sign() > 0 ? s.slope_left(t)
                                      : map.strand(pred[static_cast<std::size_t>(i)]).slope_left(Rational(1));
        const int sum = sgn(Rational(1) - rec.slope_left) + sgn(Rational(1) - rec.slope_right);
        rec.local_index = sum / 2;
        rec.degenerate = sum == 0;
        out.points.push_back(std::move(rec));
      }
    }
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const FixedPointRecord& a, const FixedPointRecord& b) { return a.location < b.location; });
  return out;
}

bool is_fixed(const NValuedCircleMap& map, const Rational& x) {
  const Rational t = x.frac();
  return std::any_of(map.strands().begin(), map.strands().end(),
                     [&](const PlFunction& s) { return (s(t) - t).is_integer(); });
}

bool has_fixed_point_in(const FixedPointSet& fix, const OpenArcSet& region) {
  if (region.is_empty()) return false;
  if (region.is_whole_circle()) return !fix.empty();
  for (const auto& p : fix.points) {
    if (region.contains(p.location.coordinate())) return true;
  }
  for (const auto& iv : fix.intervals) {
    if (iv.length >= 1) return true;
    for (const auto& arc : region.arcs()) {
      // The closed interval meets the open arc iff it starts inside the arc
      // or passes through the arc's start before ending.
      if (arc.contains(iv.start) || (arc.start - iv.start).frac() < iv.length) return true;
    }
  }
  return false;
}

bool is_admissible(const FixedPointSet& fix, const OpenArcSet& region) {
  for (const auto& b : region.boundary()) {
    for (const auto& p : fix.points) {
      if (p.location.coordinate() == b) return false;
    }
    for (const auto& iv : fix.intervals) {
      if (iv.contains(b)) return false;
    }
  }
  return true;
}

bool is_admissible(const NValuedCircleMap& map, const OpenArcSet& region) {
  if (region.is_whole_circle() || region.is_empty()) return true;
  return is_admissible(fixed_points(map), region);
}

Perturbation fix_finite_perturb(const NValuedCircleMap& map) {
  struct Target {
    int strand;
    std::size_t segment;
  };
  std::vector<Target> targets;
  for (int i = 0; i < map.n(); ++i) {
    for (std::size_t k = 0; k < map.strand(i).segment_count(); ++k) {
      if (is_degenerate_segment(map.strand(i).segment(k))) targets.push_back({i, k});
    }
  }
  if (targets.empty()) return {map, identity_homotopy(map), Rational(0)};

  Rational bound(1, 4);
  for (const auto& tg : targets) {
    const Segment seg = map.strand(tg.strand).segment(tg.segment);
    for (int j = 0; j < map.n(); ++j) {
      if (j == tg.strand) continue;
      std::vector<Rational> ts{seg.t0, seg.t1};
      for (const auto& p : map.strand(j).breakpoints()) {
        if (p.t > seg.t0 && p.t < seg.t1) ts.push_back(p.t);
      }
      for (const auto& t : ts) {
        bound = min(bound, integer_distance(map.strand(tg.strand)(t) - map.strand(j)(t)) / 2);
      }
    }
  }
  for (const auto& s : map.strands()) {
    for (const auto& p : s.breakpoints()) {
      const Rational r = integer_distance(p.value - p.t);
      if (r.sign() != 0) bound = min(bound, r / 2);
    }
  }
  Rational eps(1, 2);
  while (eps >= bound) eps /= 2;

  std::vector<PlFunction> strands;
  for (int i = 0; i < map.n(); ++i) {
    const auto& s = map.strand(i);
    std::vector<Breakpoint> pts{s.breakpoints().front()};
    for (std::size_t k = 0; k < s.segment_count(); ++k) {
      const Segment seg = s.segment(k);
      if (is_degenerate_segment(seg)) {
        const Rational len = seg.t1 - seg.t0;
        const Rational m = seg.v0 - seg.t0;
        const Rational q1 = seg.t0 + len / 4;
        const Rational q3 = seg.t0 + len * Rational(3, 4);
        pts.push_back({q1, q1 + m + eps});
        pts.push_back({q3, q3 + m - eps});
      }
      pts.push_back({seg.t1, seg.v1});
    }
    strands.emplace_back(std::move(pts));
  }
  NValuedCircleMap perturbed(std::move(strands), map.monodromy());
  auto h = make_homotopy(map, perturbed);
  return {std::move(perturbed), std::move(h), eps};
}

std::vector<Rational> branch_fixed_points(const PlFunction& branch, const Rational& lo, const Rational& hi) {
  std::set<Rational> found;
  for (std::size_t k = 0; k < branch.segment_count(); ++k) {
    const Segment seg = branch.segment(k);
    if (seg.t1 <= lo || seg.t0 >= hi) continue;
    const Rational g0 = seg.v0 - seg.t0;
    const Rational g1 = seg.v1 - seg.t1;
    if (seg.slope() == 1) {
      if (g0.is_integer()) throw Degenerate("branch is fixed on a whole piece");
      continue;
    }
    for (const auto& m : integers_between(min(g0, g1), max(g0, g1))) {
      const Rational t = seg.t0 + (m - g0) * (seg.t1 - seg.t0) / (g1 - g0);
      if (t > lo && t < hi) found.insert(t);
    }
  }
  return {found.begin(), found.end()};
}

int classical_local_index(const PlFunction& branch, const Rational& u) {
  return (sgn(Rational(1) - branch.slope_left(u)) + sgn(Rational(1) - branch.slope_right(u))) / 2;
}

long index_schirmer(const NValuedCircleMap& map, const OpenArcSet& region) {
  if (!is_admissible(map, region)) {
    throw NotAdmissible("fixed point on the boundary of region " + region.to_string());
  }
  if (region.is_empty()) return 0;

  const Perturbation pert = fix_finite_perturb(map);
  const FixedPointSet fix = fixed_points(pert.map);
  if (!fix.fix_finite()) throw std::logic_error("perturbed map is not fix-finite");

  // Isolating neighbourhoods (lo, hi) around lifted fixed points u.
  struct Isolated {
    Rational lo, u, hi;
  };
  std::vector<Isolated> cells;
  if (region.is_whole_circle()) {
    std::vector<Rational> xs;
    for (const auto& p : fix.points) xs.push_back(p.location.coordinate());
    const std::size_t r = xs.size();
    for (std::size_t j = 0; j < r; ++j) {
      if (r == 1) {
        cells.push_back({xs[0] - Rational(1, 4), xs[0], xs[0] + Rational(1, 4)});
        break;
      }
      const Rational prev = j > 0 ? xs[j - 1] : xs[r - 1] - 1;
      const Rational next = j + 1 < r ? xs[j + 1] : xs[0] + 1;
      cells.push_back({(prev + xs[j]) / 2, xs[j], (xs[j] + next) / 2});
    }
  } else {
    for (const auto& arc : region.arcs()) {
      std::vector<Rational> us;
      for (const auto& p : fix.points) {
        if (arc.contains(p.location.coordinate())) us.push_back(arc.lift(p.location.coordinate()));
      }
      std::sort(us.begin(), us.end());
      for (std::size_t j = 0; j < us.size(); ++j) {
        Rational lo = j > 0 ? (us[j - 1] + us[j]) / 2 : arc.start;
        Rational hi = j + 1 < us.size() ? (us[j] + us[j + 1]) / 2 : arc.end();
        if (hi - lo >= 1) {
          lo = (arc.start + us[j]) / 2;
          hi = (us[j] + arc.end()) / 2;
        }
        cells.push_back({lo, us[j], hi});
      }
    }
  }

  long total = 0;
  for (const auto& cell : cells) {
    const Rational shift = from_integer(cell.lo.floor());
    const Arc v{cell.lo - shift, cell.hi - cell.lo};
    const Rational u = cell.u - shift;
    int fixed_branches = 0;
    int local = 0;
    for (const auto& br : split_on_arc(pert.map, v)) {
      const auto pts = branch_fixed_points(br.function, v.start, v.end());
      if (pts.empty()) continue;
      if (pts.size() != 1 || pts.front() != u) {
        throw std::logic_error("isolating arc around " + u.to_string() + " is not isolating");
      }
      ++fixed_branches;
      local = classical_local_index(br.function, u);
    }
    if (fixed_branches != 1) {
      throw std::logic_error("expected exactly one fixed branch near " + u.to_string());
    }
    total += local;
  }
  return total;
}

long index_crossing(const NValuedCircleMap& map, const OpenArcSet& region) {
  if (!is_admissible(map, region)) {
    throw NotAdmissible("fixed point on the boundary of region " + region.to_string());
  }
  if (region.is_empty()) return 0;

  std::vector<Arc> arcs = region.arcs();
  if (region.is_whole_circle()) arcs = {Arc{choose_cut_point(map, fixed_points(map)), Rational(1)}};

  long twice = 0;
  for (const auto& arc : arcs) {
    const Rational a = arc.start;
    const Rational b = arc.end();
    for (const auto& br : continue_branches(map, a, arc.length)) {
      const Rational ga = br.function(a) - a;
      const Rational gb = br.function(b) - b;
      const Rational lo = from_integer(min(ga, gb).floor());
      const Rational hi = from_integer(max(ga, gb).ceil());
      for (const auto& m : integers_between(lo, hi)) twice += sgn(ga - m) - sgn(gb - m);
    }
  }
  if (twice % 2 != 0) throw std::logic_error("crossing count is not integral");
  return twice / 2;
}

long empty_region_index(const NValuedCircleMap& /*map*/) { return 0; }

}  // namespace nvfix
