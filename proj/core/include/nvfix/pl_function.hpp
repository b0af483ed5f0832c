#pragma once

#include <span>
#include <vector>

#include "nvfix/rational.hpp"

namespace nvfix {

struct Breakpoint {
  Rational t;
  Rational value;

  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// One linear piece [t0, t1] of a PlFunction.
struct Segment {
  Rational t0, v0, t1, v1;

  Rational slope() const { return (v1 - v0) / (t1 - t0); }
  Rational at(const Rational& t) const { return v0 + slope() * (t - t0); }
};

/// Continuous piecewise-linear real function on a closed interval, given by its
/// breakpoints. At least two breakpoints with strictly increasing t.
class PlFunction {
 public:
  explicit PlFunction(std::vector<Breakpoint> breakpoints);

  /// Straight line from (t0, v0) to (t1, v1).
  static PlFunction line(Rational t0, Rational v0, Rational t1, Rational v1);

  const std::vector<Breakpoint>& breakpoints() const { return points_; }
  const Rational& start() const { return points_.front().t; }
  const Rational& end() const { return points_.back().t; }
  const Rational& start_value() const { return points_.front().value; }
  const Rational& end_value() const { return points_.back().value; }

  std::size_t segment_count() const { return points_.size() - 1; }
  Segment segment(std::size_t i) const;

  /// Exact value at t; throws InvalidArgument outside [start, end].
  Rational operator()(const Rational& t) const;

  /// Slope of the piece to the left / right of t (t strictly inside for the
  /// side requested).
  Rational slope_left(const Rational& t) const;
  Rational slope_right(const Rational& t) const;

  /// v -> v + offset.
  PlFunction shifted(const Rational& offset) const;
  /// v -> scale * v + offset.
  PlFunction affine_values(const Rational& scale, const Rational& offset) const;
  /// New function h(t) = f((t - offset) / scale), defined on the image
  /// interval. scale must be positive.
  PlFunction affine_domain(const Rational& scale, const Rational& offset) const;
  /// Restriction to [a, b] within the domain.
  PlFunction restricted(const Rational& a, const Rational& b) const;
  /// Same function with the extra breakpoints inserted (points outside the
  /// domain are ignored).
  PlFunction refined(std::span<const Rational> ts) const;
  /// Appends `next`, whose domain must begin where this one ends, with a
  /// matching value there.
  PlFunction concatenated(const PlFunction& next) const;
  /// Drops breakpoints where the slope does not change.
  PlFunction simplified() const;

  friend bool operator==(const PlFunction&, const PlFunction&) = default;

 private:
  std::vector<Breakpoint> points_;
};

/// Sorted union of the breakpoint parameters of all functions.
std::vector<Rational> common_breakpoints(std::span<const PlFunction> fs);

}  // namespace nvfix
