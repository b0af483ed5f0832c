#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nvfix/harness/generators.hpp"
#include "nvfix/index.hpp"

namespace nvfix::harness {

/// Integer-valued function on admissible (map, region) pairs.
struct CandidateIndexFunction {
  std::string name;
  std::function<long(const NValuedCircleMap&, const OpenArcSet&)> fn;

  long operator()(const NValuedCircleMap& map, const OpenArcSet& region) const { return fn(map, region); }
};

CandidateIndexFunction schirmer_candidate();
CandidateIndexFunction crossing_candidate();

// Deliberately wrong candidates.
CandidateIndexFunction zero_candidate();          // always 0
CandidateIndexFunction region_blind_candidate();  // total degree, ignores the region
CandidateIndexFunction sign_flipped_candidate();  // -index
CandidateIndexFunction shifted_candidate();       // index + 1

/// zero, region-blind, sign-flipped.
std::vector<CandidateIndexFunction> negative_controls();

struct CheckEntry {
  std::string suite;
  std::string case_id;
  std::string candidate;
  std::vector<std::string> map_digests;
  std::string region;
  nlohmann::json expected;
  nlohmann::json got;
  bool pass = false;
  std::string note;

  nlohmann::json to_json() const;
};

struct SuiteReport {
  std::string suite;
  std::string candidate;
  std::vector<CheckEntry> entries;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  /// First failing entry, if any.
  const CheckEntry* first_failure() const;
};

/// Worker count: NVFIX_THREADS if set and positive, else the hardware count.
unsigned worker_count();

/// Runs fn(0..count-1) on worker threads and concatenates the results in
/// case order. Rethrows the first exception raised by fn.
std::vector<CheckEntry> run_cases(std::size_t count, const std::function<std::vector<CheckEntry>(std::size_t)>& fn);

SuiteReport check_homotopy_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus);
/// Partition sums, empty set, excision and the solution property.
SuiteReport check_additivity_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus);
SuiteReport check_splitting_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus);
/// Uses constant maps drawn from the corpus seed, one per corpus case.
SuiteReport check_normalization_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus);
SuiteReport check_chart_invariance(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus);
SuiteReport differential_uniqueness(const CandidateIndexFunction& a, const CandidateIndexFunction& b,
                                    const AdmissibleCorpus& corpus);

/// Every axiom suite above for one candidate.
std::vector<SuiteReport> check_all_axioms(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus);

/// True iff some closed selection exists for every strand, found by matching
/// strand end values against the values at 0 (ignores the stored monodromy).
bool brute_force_is_split(const NValuedCircleMap& map);
bool brute_force_product_is_split(const NValuedCircleMap& f, const NValuedCircleMap& g);

/// Arc decomposition of `region` obtained by cutting at points that are not
/// fixed: pieces with a fixed point or interval go first, then fix-free ones.
struct RegionPieces {
  std::vector<Arc> with_fix;
  std::vector<Arc> fix_free;
};
RegionPieces cut_region(const FixedPointSet& fix, const OpenArcSet& region, Rng& rng);

/// Small disjoint arcs around every fixed point and interval inside `region`,
/// with no fixed point on their boundary.
OpenArcSet fixed_neighbourhood(const FixedPointSet& fix, const OpenArcSet& region);

}  // namespace nvfix::harness
