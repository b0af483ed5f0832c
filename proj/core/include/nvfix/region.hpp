#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nvfix/rational.hpp"

namespace nvfix {

/// Point of the circle R/Z, stored as its representative in [0, 1).
class CirclePoint {
 public:
  CirclePoint() = default;
  /// Reduces any real coordinate mod 1.
  explicit CirclePoint(const Rational& x) : coordinate_(x.frac()) {}

  const Rational& coordinate() const { return coordinate_; }

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
  friend auto operator<=>(const CirclePoint& a, const CirclePoint& b) {
    return a.coordinate_ <=> b.coordinate_;
  }

 private:
  Rational coordinate_;
};

/// Open circular arc {start + u : 0 < u < length}. A length of 1 is the circle
/// punctured at `start`.
struct Arc {
  Rational start;   // in [0, 1)
  Rational length;  // in (0, 1]

  Rational end() const { return start + length; }
  /// True iff x (any real) lies in the open arc mod 1.
  bool contains(const Rational& x) const;
  /// True iff x lies in the closure of the arc.
  bool closure_contains(const Rational& x) const;
  /// True iff x is an endpoint of the arc mod 1.
  bool is_endpoint(const Rational& x) const;
  /// Lifted representative of x in [start, start + 1).
  Rational lift(const Rational& x) const;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Finite union of pairwise disjoint open arcs, or the whole circle.
class OpenArcSet {
 public:
  OpenArcSet() = default;  // empty set

  /// Arcs are normalised (start reduced mod 1) and sorted by start. Throws
  /// InvalidArgument on bad lengths or overlapping arcs.
  explicit OpenArcSet(std::vector<Arc> arcs);

  static OpenArcSet whole_circle();
  static OpenArcSet empty() { return OpenArcSet(); }
  static OpenArcSet single(Rational start, Rational length);

  /// "all", "empty", or comma-separated "start+len" pairs such as
  /// "1/4+1/2,7/8+1/16". Throws ParseError.
  static OpenArcSet parse(std::string_view text);
  std::string to_string() const;

  bool is_whole_circle() const { return whole_; }
  bool is_empty() const { return !whole_ && arcs_.empty(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool contains(const Rational& x) const;
  bool closure_contains(const Rational& x) const;
  /// Boundary points (each arc's endpoints), as coordinates in [0, 1).
  std::vector<Rational> boundary() const;
  bool on_boundary(const Rational& x) const;

  /// Subset made of the listed arcs.
  OpenArcSet subset(const std::vector<std::size_t>& which) const;

  friend bool operator==(const OpenArcSet&, const OpenArcSet&) = default;

 private:
  std::vector<Arc> arcs_;
  bool whole_ = false;
};

}  // namespace nvfix
