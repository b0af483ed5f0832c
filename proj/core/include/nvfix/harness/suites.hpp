#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nvfix/harness/axioms.hpp"

namespace nvfix::harness {

struct VerifyOptions {
  std::string suite = "all";  // axioms | averaging | product | uniqueness | all
  std::uint64_t seed = 7;
  int cases = 100;
  GeneratorConfig generator;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<SuiteReport> suites;

  std::size_t checks() const;
  std::size_t failures() const;
  /// Schema-stable report. Timing is added by the caller, if at all.
  nlohmann::json to_json() const;
};

const std::vector<std::string>& verify_groups();

/// Throws InvalidArgument for an unknown group.
VerifyReport run_verify(const VerifyOptions& options);

// Individual groups.
std::vector<SuiteReport> verify_axioms(const VerifyOptions& options);
std::vector<SuiteReport> verify_averaging(const VerifyOptions& options);
std::vector<SuiteReport> verify_product(const VerifyOptions& options);
std::vector<SuiteReport> verify_uniqueness(const VerifyOptions& options);

/// Negative-control suite: one entry per wrong candidate, passing when at
/// least one axiom suite rejects it.
SuiteReport check_negative_controls(const AdmissibleCorpus& corpus);

}  // namespace nvfix::harness
