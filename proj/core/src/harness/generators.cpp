#include "nvfix/harness/generators.hpp"

#include <algorithm>
#include <cstdio>

#include "nvfix/errors.hpp"
#include "nvfix/index.hpp"

namespace nvfix::harness {

namespace {

constexpr long kRegionPrimes[] = {97, 101, 103, 107, 109, 113};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// k distinct values from [lo, hi], sorted.
std::vector<long> distinct_sorted(Rng& rng, long lo, long hi, long k) {
  k = std::min(k, hi - lo + 1);
  std::vector<long> pool;
  for (long v = lo; v <= hi; ++v) pool.push_back(v);
  for (long i = 0; i < k; ++i) {
    const long j = rng.uniform(i, static_cast<long>(pool.size()) - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

Permutation random_permutation(Rng& rng, int n) {
  Permutation p = identity_permutation(n);
  for (int i = n - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(rng.uniform(0, i))]);
  return p;
}

// Linear map (n, d) plus a PL perturbation smaller than 1/(2n) per strand, so
// strands stay distinct. With `pin_identity`, strand 0 gets zero perturbation
// on one segment (with d == n that segment is fixed pointwise).
NValuedCircleMap perturbed_linear(Rng& rng, const GeneratorConfig& cfg, int n, long d, bool pin_identity) {
  const NValuedCircleMap base = linear_map(n, d);
  const long den = cfg.max_denominator;
  const long amp = std::max<long>(0, (den + 2L * n - 1) / (2L * n) - 1);

  std::vector<Rational> start(static_cast<std::size_t>(n));
  for (auto& s : start) s = rng.fraction(-amp, amp, den);
  if (pin_identity) start[0] = Rational(0);

  std::vector<PlFunction> strands;
  for (int k = 0; k < n; ++k) {
    const long q = rng.uniform(2, den);
    const long interior = rng.uniform(0, cfg.max_breakpoints - 2);
    std::vector<Rational> ts{Rational(0)};
    for (long j : distinct_sorted(rng, 1, q - 1, interior)) ts.emplace_back(j, q);
    ts.emplace_back(1);

    std::vector<Rational> p(ts.size());
    p.front() = start[static_cast<std::size_t>(k)];
    p.back() = start[static_cast<std::size_t>(base.monodromy()[static_cast<std::size_t>(k)])];
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) p[i] = rng.fraction(-amp, amp, den);
    if (pin_identity && k == 0) {
      const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(ts.size()) - 2));
      p[i] = Rational(0);
      p[i + 1] = Rational(0);
    }

    std::vector<Breakpoint> pts;
    for (std::size_t i = 0; i < ts.size(); ++i) pts.push_back({ts[i], base.strand(k)(ts[i]) + p[i]});
    strands.emplace_back(std::move(pts));
  }
  return NValuedCircleMap(std::move(strands), base.monodromy());
}

NValuedCircleMap random_constant(Rng& rng, const GeneratorConfig& cfg, int n) {
  const long q = rng.uniform(n + 1, std::max<long>(n + 1, cfg.max_denominator));
  std::vector<Rational> values;
  for (long j : distinct_sorted(rng, 0, q - 1, n)) values.emplace_back(j, q);
  return constant_map(values);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
  return splitmix(splitmix(seed ^ splitmix(salt)) + index);
}

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw InvalidArgument("empty uniform range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(next() % span);
}

NValuedCircleMap random_degenerate_map(Rng& rng, const GeneratorConfig& cfg) {
  const int n = static_cast<int>(rng.uniform(1, cfg.max_strands));
  const auto map = perturbed_linear(rng, cfg, n, n, true);
  return relabeled(map, random_permutation(rng, n));
}

NValuedCircleMap random_map(Rng& rng, const GeneratorConfig& cfg) {
  const int n = static_cast<int>(rng.uniform(1, cfg.max_strands));
  const long kind = rng.uniform(0, 99);
  if (kind >= 85) return random_degenerate_map(rng, cfg);

  NValuedCircleMap map = kind < 20   ? linear_map(n, rng.uniform(-8, 8))
                         : kind < 70 ? perturbed_linear(rng, cfg, n, rng.uniform(-6, 6), false)
                                     : random_constant(rng, cfg, n);
  map = relabeled(map, random_permutation(rng, n));
  if (rng.chance(50)) {
    const long q = rng.uniform(2, cfg.max_denominator);
    map = rotated(map, rng.fraction(0, q - 1, q));
  }
  return map;
}

Arc random_proper_arc(Rng& rng) {
  const long p = kRegionPrimes[rng.uniform(0, 5)];
  if (rng.chance(50)) {
    const long s = rng.uniform(p / 2, p - 1);
    return {Rational(s, p), Rational(rng.uniform(p - s + 1, p - 1), p)};
  }
  return {Rational(rng.uniform(0, p - 1), p), Rational(rng.uniform(1, p - 1), p)};
}

OpenArcSet random_region(Rng& rng, const NValuedCircleMap& map) {
  const FixedPointSet fix = fixed_points(map);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const long kind = rng.uniform(0, 99);
    if (kind < 20) return OpenArcSet::whole_circle();
    if (kind < 25) return OpenArcSet::empty();
    OpenArcSet region;
    if (kind < 65) {
      const Arc a = random_proper_arc(rng);
      region = OpenArcSet({a});
    } else {
      const long p = kRegionPrimes[rng.uniform(0, 5)];
      const long r = rng.uniform(2, 3);
      const auto cuts = distinct_sorted(rng, 0, p - 1, 2 * r);
      const bool wrap = rng.chance(50);
      std::vector<Arc> arcs;
      for (long i = 0; i < r; ++i) {
        const auto a = static_cast<std::size_t>(2 * i + (wrap ? 1 : 0));
        const long from = cuts[a];
        const long to = a + 1 < cuts.size() ? cuts[a + 1] : cuts[0] + p;
        arcs.push_back({Rational(from, p), Rational(to - from, p)});
      }
      region = OpenArcSet(std::move(arcs));
    }
    if (is_admissible(fix, region)) return region;
  }
  return OpenArcSet::whole_circle();
}

std::optional<StrandHomotopy> random_homotopy(Rng& rng, const NValuedCircleMap& map, const OpenArcSet& region) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    const long den = 64L << attempt;
    const Rational shift = rng.fraction(-6, 6, den);
    std::vector<PlFunction> strands;
    for (const auto& s : map.strands()) {
      auto pts = s.breakpoints();
      for (std::size_t i = 1; i + 1 < pts.size(); ++i) pts[i].value += rng.fraction(-4, 4, den);
      strands.push_back(PlFunction(std::move(pts)).shifted(shift));
    }
    try {
      auto h = make_homotopy(map, NValuedCircleMap(std::move(strands), map.monodromy()));
      if (homotopy_is_admissible(h, region)) return h;
    } catch (const DistinctnessBroken&) {
    }
  }
  return std::nullopt;
}

CircleHomeomorphism random_homeomorphism(Rng& rng) {
  const Rational c = rng.fraction(-8, 15, 16);
  if (rng.chance(20)) return CircleHomeomorphism::rotation(c);
  const long r = rng.uniform(1, 4);
  const long q = rng.uniform(r + 1, 32);
  const long qv = rng.uniform(r + 1, 48);
  const auto ts = distinct_sorted(rng, 1, q - 1, r);
  const auto vs = distinct_sorted(rng, 1, qv - 1, r);
  std::vector<Breakpoint> pts{{Rational(0), c}};
  for (std::size_t i = 0; i < ts.size() && i < vs.size(); ++i) pts.push_back({Rational(ts[i], q), c + Rational(vs[i], qv)});
  pts.push_back({Rational(1), c + 1});
  return CircleHomeomorphism(PlFunction(std::move(pts)));
}

AdmissibleCorpus make_corpus(std::uint64_t seed, int count, const GeneratorConfig& cfg) {
  AdmissibleCorpus corpus;
  corpus.seed = seed;
  for (int i = 0; i < count; ++i) {
    Rng rng(Rng::derive(seed, 1, static_cast<std::uint64_t>(i)));
    NValuedCircleMap map = random_map(rng, cfg);
    OpenArcSet region = random_region(rng, map);
    auto h = random_homotopy(rng, map, region);
    char id[16];
    std::snprintf(id, sizeof id, "c%04d", i);
    corpus.cases.push_back({id, std::move(map), std::move(region), std::move(h)});
  }
  return corpus;
}

}  // namespace nvfix::harness
