#pragma once

#include "nvfix/nmap.hpp"
#include "nvfix/region.hpp"

namespace nvfix {

/// Orientation-preserving PL homeomorphism of the circle, given by a strictly
/// increasing lift Phi on [0, 1] with Phi(1) = Phi(0) + 1, extended by
/// Phi(x + m) = Phi(x) + m.
class CircleHomeomorphism {
 public:
  explicit CircleHomeomorphism(PlFunction lift);

  static CircleHomeomorphism identity();
  static CircleHomeomorphism rotation(const Rational& c);

  const PlFunction& lift() const { return lift_; }

  Rational apply(const Rational& x) const;
  Rational apply_inverse(const Rational& y) const;
  CircleHomeomorphism inverse() const;

  /// phi o f o phi^{-1}.
  NValuedCircleMap conjugate(const NValuedCircleMap& f) const;
  /// phi(U).
  OpenArcSet image(const OpenArcSet& region) const;

 private:
  PlFunction lift_;
};

}  // namespace nvfix
