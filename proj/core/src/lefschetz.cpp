#include "nvfix/lefschetz.hpp"

#include <stdexcept>

#include "nvfix/index.hpp"

namespace nvfix {

const char* to_string(LefschetzMethod m) {
  switch (m) {
    case LefschetzMethod::DegreeFormula:
      return "degree_formula";
    case LefschetzMethod::SplitSum:
      return "split_sum";
  }
  return "?";
}

LefschetzValue lefschetz(const NValuedCircleMap& map) {
  LefschetzValue out;
  out.value = map.n() - total_degree(map);
  if (is_split(map)) {
    long sum = 0;
    for (const auto& branch : split(map)) sum += 1 - total_degree(branch);
    out.split_sum = sum;
    if (sum != out.value) {
      throw std::logic_error("split-sum Lefschetz number " + std::to_string(sum) +
                             " disagrees with degree formula " + std::to_string(out.value));
    }
  }
  return out;
}

CrabbReport verify_crabb(const NValuedCircleMap& map) {
  const auto whole = OpenArcSet::whole_circle();
  return {lefschetz(map).value, index_schirmer(map, whole), index_crossing(map, whole)};
}

}  // namespace nvfix
