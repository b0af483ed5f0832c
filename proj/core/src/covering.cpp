#include "nvfix/covering.hpp"

#include <algorithm>
#include <optional>

#include "nvfix/errors.hpp"
#include "nvfix/index.hpp"
#include "nvfix/lefschetz.hpp"

namespace nvfix {

namespace {

// Lift of base strand `strand` starting on sheet `sheet`: over the block
// [b/k, (b+1)/k] it follows whichever base strand the path has reached,
// rescaled by 1/k.
PlFunction lift_strand(const NValuedCircleMap& base, int k, int strand, int sheet) {
  const Rational inv_k(1, k);
  int current = strand;
  Rational offset(sheet);
  std::optional<PlFunction> out;
  for (int b = 0; b < k; ++b) {
    PlFunction piece = base.strand(current)
                           .affine_domain(inv_k, Rational(b, k))
                           .affine_values(inv_k, offset * inv_k);
    out = out ? out->concatenated(piece) : piece;
    offset += base.winding_offset(current);
    current = base.monodromy()[static_cast<std::size_t>(current)];
  }
  return *out;
}

}  // namespace

std::vector<LiftedMap> lift_map(const NValuedCircleMap& base, CyclicCover cover, long max_enumeration) {
  if (cover.k < 1) throw InvalidArgument("cover fold count must be >= 1");
  const int n = base.n();
  long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= cover.k;
    if (total > max_enumeration) {
      throw InvalidArgument("k^n = " + std::to_string(cover.k) + "^" + std::to_string(n) +
                            " exceeds the lift enumeration limit " + std::to_string(max_enumeration));
    }
  }

  std::vector<std::vector<PlFunction>> table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < cover.k; ++j) table[static_cast<std::size_t>(i)].push_back(lift_strand(base, cover.k, i, j));
  }

  std::vector<LiftedMap> lifts;
  std::vector<int> sheets(static_cast<std::size_t>(n), 0);
  for (long c = 0; c < total; ++c) {
    long rest = c;
    for (int i = n - 1; i >= 0; --i) {
      sheets[static_cast<std::size_t>(i)] = static_cast<int>(rest % cover.k);
      rest /= cover.k;
    }
    std::vector<PlFunction> strands;
    for (int i = 0; i < n; ++i) {
      strands.push_back(table[static_cast<std::size_t>(i)][static_cast<std::size_t>(sheets[static_cast<std::size_t>(i)])]);
    }
    try {
      NValuedCircleMap candidate = from_strands(std::move(strands));
      if (!validate(candidate).ok()) continue;
      lifts.push_back({std::move(candidate), cover, base, sheets});
    } catch (const InvalidArgument&) {
      // Some lifted strand ends where no strand starts: not closed.
    }
  }
  return lifts;
}

LiftedMap deck_act(DeckElement alpha, const LiftedMap& lift) {
  const int k = lift.cover.k;
  const int j = ((alpha.j % k) + k) % k;
  // Sheets that pass k wrap to the same circle point one integer lower, which
  // keeps translates identical to the corresponding enumerated lifts.
  std::vector<PlFunction> strands;
  std::vector<int> sheets;
  for (int i = 0; i < lift.map.n(); ++i) {
    int sheet = lift.sheets[static_cast<std::size_t>(i)] + j;
    Rational shift(j, k);
    if (sheet >= k) {
      sheet -= k;
      shift -= 1;
    }
    strands.push_back(lift.map.strand(i).shifted(shift));
    sheets.push_back(sheet);
  }
  return {NValuedCircleMap(std::move(strands), lift.map.monodromy()), lift.cover, lift.base, std::move(sheets)};
}

bool commutes_at(const LiftedMap& lift, const Rational& x) {
  const Rational t = x.frac();
  std::vector<CirclePoint> projected;
  for (const auto& p : evaluate(lift.map, t)) projected.emplace_back(lift.cover.project(p.coordinate()));
  std::sort(projected.begin(), projected.end());
  return projected == evaluate(lift.base, lift.cover.project(t));
}

OpenArcSet preimage(const OpenArcSet& region, CyclicCover cover) {
  if (region.is_whole_circle() || region.is_empty()) return region;
  std::vector<Arc> arcs;
  for (const auto& a : region.arcs()) {
    for (int j = 0; j < cover.k; ++j) {
      arcs.push_back({(a.start + j) / cover.k, a.length / cover.k});
    }
  }
  return OpenArcSet(std::move(arcs));
}

bool AveragingReport::holds() const {
  const bool all_admissible = std::all_of(translate_admissible.begin(), translate_admissible.end(),
                                          [](bool b) { return b; });
  return all_admissible && divisible && deck_sum / k == base_index && base_index == base_index_crossing;
}

AveragingReport verify_averaging(const NValuedCircleMap& base, CyclicCover cover, const OpenArcSet& region,
                                 long max_enumeration) {
  if (!is_admissible(base, region)) throw NotAdmissible("base pair is not admissible");
  const auto lifts = lift_map(base, cover, max_enumeration);
  if (lifts.empty()) {
    throw NoLiftExists("no lift of the map through the " + std::to_string(cover.k) + "-fold cover");
  }
  AveragingReport r;
  r.k = cover.k;
  r.base_index = index_schirmer(base, region);
  r.base_index_crossing = index_crossing(base, region);
  const OpenArcSet lifted_region = preimage(region, cover);
  for (int j = 0; j < cover.k; ++j) {
    const LiftedMap translate = deck_act({j}, lifts.front());
    const bool ok = is_admissible(translate.map, lifted_region);
    r.translate_admissible.push_back(ok);
    const long ind = ok ? index_schirmer(translate.map, lifted_region) : 0;
    r.translate_indices.push_back(ind);
    r.deck_sum += ind;
  }
  r.divisible = r.deck_sum % cover.k == 0;
  return r;
}

LefschetzAveragingReport verify_lefschetz_averaging(const NValuedCircleMap& base, CyclicCover cover,
                                                    long max_enumeration) {
  const auto lifts = lift_map(base, cover, max_enumeration);
  if (lifts.empty()) {
    throw NoLiftExists("no lift of the map through the " + std::to_string(cover.k) + "-fold cover");
  }
  LefschetzAveragingReport r;
  r.k = cover.k;
  r.base_lefschetz = lefschetz(base).value;
  for (int j = 0; j < cover.k; ++j) {
    const long l = lefschetz(deck_act({j}, lifts.front()).map).value;
    r.translate_lefschetz.push_back(l);
    r.sum += l;
  }
  return r;
}

}  // namespace nvfix
