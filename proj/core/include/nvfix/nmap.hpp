#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nvfix/pl_function.hpp"
#include "nvfix/rational.hpp"
#include "nvfix/region.hpp"

namespace nvfix {

/// 0-based permutation; entry i is the image of i.
using Permutation = std::vector<int>;

bool is_permutation(std::span<const int> p);
Permutation identity_permutation(int n);
Permutation inverse(std::span<const int> p);

/// PL n-valued self-map of the circle R/Z.
///
/// Strand i is a real lift s_i : [0,1] -> R of one branch over the fundamental
/// domain; at the seam strand i continues as strand monodromy[i], shifted by
/// the integer winding_offset(i) = s_i(1) - s_{monodromy[i]}(0).
///
/// The constructor checks structure only (sizes, domains, permutation).
/// Distinctness and closure are checked by validate(); every other operation
/// assumes a valid map.
class NValuedCircleMap {
 public:
  NValuedCircleMap(std::vector<PlFunction> strands, Permutation monodromy);

  int n() const { return static_cast<int>(strands_.size()); }
  const std::vector<PlFunction>& strands() const { return strands_; }
  const PlFunction& strand(int i) const { return strands_.at(static_cast<std::size_t>(i)); }
  const Permutation& monodromy() const { return monodromy_; }

  /// s_i(1) - s_{sigma(i)}(0); an integer on valid maps.
  Rational winding_offset(int i) const;

  friend bool operator==(const NValuedCircleMap&, const NValuedCircleMap&) = default;

 private:
  std::vector<PlFunction> strands_;
  Permutation monodromy_;
};

struct Violation {
  enum class Kind { Distinctness, Closure };
  Kind kind;
  int strand_a = 0;
  int strand_b = -1;               // -1 for closure violations
  std::optional<std::size_t> segment;  // index in the pair's common refinement
  Rational t_lo, t_hi;             // parameter interval at fault
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const NValuedCircleMap& map);

/// Throws InvalidArgument carrying the first violation unless the map is valid.
void require_valid(const NValuedCircleMap& map);

/// The n image points at t in [0,1), sorted by coordinate.
std::vector<CirclePoint> evaluate(const NValuedCircleMap& map, const Rational& t);

/// Sum of strand gains s_i(1) - s_i(0).
long total_degree(const NValuedCircleMap& map);

bool is_split(const NValuedCircleMap& map);

/// n single-valued maps, one per strand. Throws NotSplit.
std::vector<NValuedCircleMap> split(const NValuedCircleMap& map);

/// Continuous branch of the map over a lifted parameter interval.
struct Branch {
  int strand;  // strand label at the left end
  PlFunction function;
};

/// Strand continuation over [start, start + length] (lifted parameter,
/// length <= 1), crossing the seam through the monodromy when needed.
std::vector<Branch> continue_branches(const NValuedCircleMap& map, const Rational& start,
                                      const Rational& length);

/// Continuous selections over the closure of a proper arc. Throws
/// InvalidArgument for arcs of length 1.
std::vector<Branch> split_on_arc(const NValuedCircleMap& map, const Arc& arc);

/// Constant map with the given pairwise distinct values (reduced mod 1).
NValuedCircleMap constant_map(std::span<const Rational> values);

/// s_k(t) = (d t + k) / n with monodromy k -> k + d mod n.
NValuedCircleMap linear_map(int n, long d);

/// Post-composition with the rotation y -> y + c.
NValuedCircleMap rotated(const NValuedCircleMap& map, const Rational& c);

/// Renames strand i to relabel[i]; monodromy is conjugated accordingly.
NValuedCircleMap relabeled(const NValuedCircleMap& map, std::span<const int> relabel);

/// Builds a map from strands on [0,1], deriving the monodromy by matching
/// s_i(1) against the start values mod 1. Throws InvalidArgument when some
/// end value matches no start value.
NValuedCircleMap from_strands(std::vector<PlFunction> strands);

/// Same map with every strand refined to the given extra breakpoints.
NValuedCircleMap refined(const NValuedCircleMap& map, std::span<const Rational> ts);

}  // namespace nvfix
