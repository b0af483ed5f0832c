#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nvfix/chart.hpp"
#include "nvfix/homotopy.hpp"
#include "nvfix/nmap.hpp"
#include "nvfix/region.hpp"

namespace nvfix::harness {

/// Deterministic random source. Draws are derived from raw mt19937_64 output
/// so that sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed for sub-stream `index` of stream `salt` under `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  long uniform(long lo, long hi);
  bool chance(int percent) { return uniform(0, 99) < percent; }
  /// Rational j/q with j uniform in [lo_num, hi_num].
  Rational fraction(long lo_num, long hi_num, long den) { return Rational(uniform(lo_num, hi_num), den); }

 private:
  std::mt19937_64 engine_;
};

struct GeneratorConfig {
  int max_strands = 4;
  int max_breakpoints = 8;
  int max_denominator = 64;
};

/// Random valid map: linear family members, PL perturbations of them,
/// constant maps, and maps with intervals of fixed points. Strands are
/// randomly relabeled.
NValuedCircleMap random_map(Rng& rng, const GeneratorConfig& cfg = {});

/// Map whose strand 0 is the identity on at least one segment.
NValuedCircleMap random_degenerate_map(Rng& rng, const GeneratorConfig& cfg = {});

/// Random region admissible for the map: whole circle, empty, one arc
/// (possibly across the seam), or a union of arcs. Falls back to the whole
/// circle when no admissible draw is found.
OpenArcSet random_region(Rng& rng, const NValuedCircleMap& map);

/// Random proper arc, about half of them crossing the seam.
Arc random_proper_arc(Rng& rng);

/// Nearby target reached by a straight-line homotopy that is admissible for
/// the region, if one is found.
std::optional<StrandHomotopy> random_homotopy(Rng& rng, const NValuedCircleMap& map, const OpenArcSet& region);

CircleHomeomorphism random_homeomorphism(Rng& rng);

struct CorpusCase {
  std::string id;
  NValuedCircleMap map;
  OpenArcSet region;
  std::optional<StrandHomotopy> homotopy;
};

/// Admissible (map, region) pairs, reproducible from the seed.
struct AdmissibleCorpus {
  std::uint64_t seed = 0;
  std::vector<CorpusCase> cases;
};

AdmissibleCorpus make_corpus(std::uint64_t seed, int count, const GeneratorConfig& cfg = {});

}  // namespace nvfix::harness
