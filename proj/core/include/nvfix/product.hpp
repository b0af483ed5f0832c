#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nvfix/index.hpp"
#include "nvfix/nmap.hpp"
#include "nvfix/region.hpp"

namespace nvfix {

/// (f x g)(x, y) = f(x) x g(y) on the torus; an nm-valued map.
struct TorusProductMap {
  NValuedCircleMap f;
  NValuedCircleMap g;

  int arity() const { return f.n() * g.n(); }
};

struct ProductRegion {
  OpenArcSet u;
  OpenArcSet v;

  static ProductRegion whole() { return {OpenArcSet::whole_circle(), OpenArcSet::whole_circle()}; }
};

struct TorusFixedPoint {
  CirclePoint x, y;
  FixedPointRecord fx, fy;
  int local_index = 0;

  const Rational& lambda() const { return fx.slope(); }
  const Rational& mu() const { return fy.slope(); }
};

TorusProductMap product_map(NValuedCircleMap f, NValuedCircleMap g);

/// The nm image pairs, sorted.
std::vector<std::pair<CirclePoint, CirclePoint>> evaluate(const TorusProductMap& pm, const Rational& x,
                                                          const Rational& y);

/// f x g splits iff f and g both split.
bool product_is_split(const TorusProductMap& pm);

/// Fix(f) x Fix(g) with paired slopes and 2D local indices. Throws Degenerate
/// when either factor has a fixed interval.
std::vector<TorusFixedPoint> torus_fixed_points(const TorusProductMap& pm);

/// Winding number around the lattice point m of the displacement
/// (F(x) - x, G(y) - y) along the boundary of [x0, x1] x [y0, y1], traversed
/// counterclockwise. F and G are lifted branches covering the intervals.
/// Throws InvalidArgument if the displacement hits m on the boundary.
long displacement_winding(const PlFunction& F, const PlFunction& G, const Rational& x0, const Rational& x1,
                          const Rational& y0, const Rational& y1, const Rational& m1, const Rational& m2);

/// Sum of 2D local indices over the torus fixed points in U x V, without
/// going through 1D indices: sign((1 - lambda)(1 - mu)) at transverse points,
/// displacement winding on a small box otherwise. Throws NotAdmissible or
/// Degenerate.
long torus_index_direct(const TorusProductMap& pm, const ProductRegion& region);

struct ProductFormulaReport {
  std::optional<long> direct;  // on the unperturbed factors, when fix-finite
  long direct_perturbed = 0;   // on fix_finite_perturb of both factors
  long index_f = 0;
  long index_g = 0;

  bool holds() const {
    return direct_perturbed == index_f * index_g && (!direct || *direct == direct_perturbed);
  }
};

/// Throws NotAdmissible when either factor pair is not admissible.
ProductFormulaReport verify_product_formula(const TorusProductMap& pm, const ProductRegion& region);

struct LefschetzProductReport {
  long direct = 0;
  long lefschetz_f = 0;
  long lefschetz_g = 0;

  bool holds() const { return direct == lefschetz_f * lefschetz_g; }
};

LefschetzProductReport verify_lefschetz_product(const NValuedCircleMap& f, const NValuedCircleMap& g);

}  // namespace nvfix
