#pragma once

#include "nvfix/nmap.hpp"
#include "nvfix/region.hpp"

namespace nvfix {

/// Straight-line homotopy H_l = (1 - l) source + l target, strand by strand,
/// on the common breakpoint refinement of each strand pair. Only
/// make_homotopy() builds one, and it certifies that every H_l is a valid
/// n-valued map.
class StrandHomotopy {
 public:
  const NValuedCircleMap& source() const { return source_; }
  const NValuedCircleMap& target() const { return target_; }

  /// H_lambda for lambda in [0, 1].
  NValuedCircleMap at(const Rational& lambda) const;

  friend StrandHomotopy make_homotopy(const NValuedCircleMap& source, const NValuedCircleMap& target);

 private:
  StrandHomotopy(NValuedCircleMap source, NValuedCircleMap target)
      : source_(std::move(source)), target_(std::move(target)) {}

  // Both refined so that strand i of source and target share breakpoints.
  NValuedCircleMap source_;
  NValuedCircleMap target_;
};

/// Throws MonodromyMismatch when n, the monodromy, or the integer winding
/// offsets differ (no straight line between them preserves closure), and
/// DistinctnessBroken naming the lambda interval and strand pair when some
/// intermediate map collides two strands.
StrandHomotopy make_homotopy(const NValuedCircleMap& source, const NValuedCircleMap& target);

inline StrandHomotopy identity_homotopy(const NValuedCircleMap& map) { return make_homotopy(map, map); }

/// True iff no H_lambda, lambda in [0,1], has a fixed point on the boundary of
/// the region. Decided exactly at each boundary point.
bool homotopy_is_admissible(const StrandHomotopy& h, const OpenArcSet& region);

struct InvarianceReport {
  long schirmer_source = 0, schirmer_target = 0;
  long crossing_source = 0, crossing_target = 0;

  bool holds() const {
    return schirmer_source == schirmer_target && crossing_source == crossing_target &&
           schirmer_source == crossing_source;
  }
};

/// Index of both ends under both algorithms. Throws NotAdmissible unless the
/// homotopy is admissible for the region.
InvarianceReport verify_homotopy_invariance(const StrandHomotopy& h, const OpenArcSet& region);

}  // namespace nvfix
