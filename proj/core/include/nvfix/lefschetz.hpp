#pragma once

#include <optional>

#include "nvfix/nmap.hpp"

namespace nvfix {

enum class LefschetzMethod { DegreeFormula, SplitSum };

const char* to_string(LefschetzMethod m);

/// L(f) for an n-valued circle map, defined as n - total_degree(f). Computed
/// without reference to fixed points so that L = ind(f, S^1) stays a real
/// check.
struct LefschetzValue {
  long value = 0;
  LefschetzMethod method = LefschetzMethod::DegreeFormula;
  /// Sum of 1 - deg(f_i) over the splitting, when the map splits.
  std::optional<long> split_sum;
};

/// Throws std::logic_error if the split sum disagrees with the degree formula.
LefschetzValue lefschetz(const NValuedCircleMap& map);

struct CrabbReport {
  long lefschetz = 0;
  long index_schirmer = 0;
  long index_crossing = 0;

  bool holds() const { return lefschetz == index_schirmer && lefschetz == index_crossing; }
};

/// L(f) against ind(f, S^1) under both index algorithms.
CrabbReport verify_crabb(const NValuedCircleMap& map);

}  // namespace nvfix
