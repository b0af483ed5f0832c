#include "nvfix/product.hpp"

#include <algorithm>

#include "nvfix/errors.hpp"
#include "nvfix/lefschetz.hpp"

namespace nvfix {

namespace {

struct Point2 {
  Rational x, y;
};

// Lifted branch through an isolated fixed point, on a box small enough to
// contain no other fixed point of the map.
struct LocalBranch {
  PlFunction function;
  Rational lo, hi;
  Rational integer;  // function(center) - center
};

Rational circle_distance(const Rational& a, const Rational& b) {
  const Rational d = (a - b).frac();
  return min(d, Rational(1) - d);
}

LocalBranch local_branch(const NValuedCircleMap& map, const FixedPointSet& fix, const FixedPointRecord& p) {
  const Rational x = p.location.coordinate();
  Rational delta(1, 4);
  for (const auto& q : fix.points) {
    if (q.location != p.location) delta = min(delta, circle_distance(q.location.coordinate(), x) / 2);
  }
  const Rational start = (x - delta).frac();
  const Rational center = start + delta;
  for (const auto& br : continue_branches(map, start, delta * 2)) {
    const Rational g = br.function(center) - center;
    if (g.is_integer()) return {br.function, start, start + delta * 2, g};
  }
  throw std::logic_error("no branch through fixed point " + x.to_string());
}

int sign_of(const Rational& r) { return r.sign(); }

}  // namespace

TorusProductMap product_map(NValuedCircleMap f, NValuedCircleMap g) { return {std::move(f), std::move(g)}; }

std::vector<std::pair<CirclePoint, CirclePoint>> evaluate(const TorusProductMap& pm, const Rational& x,
                                                          const Rational& y) {
  std::vector<std::pair<CirclePoint, CirclePoint>> out;
  for (const auto& a : evaluate(pm.f, x)) {
    for (const auto& b : evaluate(pm.g, y)) out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool product_is_split(const TorusProductMap& pm) { return is_split(pm.f) && is_split(pm.g); }

long displacement_winding(const PlFunction& F, const PlFunction& G, const Rational& x0, const Rational& x1,
                          const Rational& y0, const Rational& y1, const Rational& m1, const Rational& m2) {
  const auto dx = [&](const Rational& x) { return F(x) - x - m1; };
  const auto dy = [&](const Rational& y) { return G(y) - y - m2; };
  const auto interior = [](const PlFunction& h, const Rational& a, const Rational& b) {
    std::vector<Rational> ts;
    for (const auto& p : h.breakpoints()) {
      if (p.t > a && p.t < b) ts.push_back(p.t);
    }
    return ts;
  };

  std::vector<Point2> poly;
  poly.push_back({dx(x0), dy(y0)});
  for (const auto& x : interior(F, x0, x1)) poly.push_back({dx(x), dy(y0)});
  poly.push_back({dx(x1), dy(y0)});
  for (const auto& y : interior(G, y0, y1)) poly.push_back({dx(x1), dy(y)});
  poly.push_back({dx(x1), dy(y1)});
  auto top = interior(F, x0, x1);
  std::reverse(top.begin(), top.end());
  for (const auto& x : top) poly.push_back({dx(x), dy(y1)});
  poly.push_back({dx(x0), dy(y1)});
  auto left = interior(G, y0, y1);
  std::reverse(left.begin(), left.end());
  for (const auto& y : left) poly.push_back({dx(x0), dy(y)});

  long winding = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    const Rational cross = p.x * q.y - p.y * q.x;
    const bool through_origin = cross.sign() == 0 && (p.x * q.x).sign() <= 0 && (p.y * q.y).sign() <= 0;
    if (through_origin) throw InvalidArgument("displacement vanishes on the box boundary");
    if (p.y.sign() <= 0) {
      if (q.y.sign() > 0 && cross.sign() > 0) ++winding;
    } else if (q.y.sign() <= 0 && cross.sign() < 0) {
      --winding;
    }
  }
  return winding;
}

std::vector<TorusFixedPoint> torus_fixed_points(const TorusProductMap& pm) {
  const FixedPointSet fx = fixed_points(pm.f);
  const FixedPointSet fy = fixed_points(pm.g);
  if (!fx.fix_finite() || !fy.fix_finite()) {
    throw Degenerate("a factor has an interval of fixed points; perturb it first");
  }
  std::vector<TorusFixedPoint> out;
  for (const auto& a : fx.points) {
    for (const auto& b : fy.points) {
      TorusFixedPoint tp{a.location, b.location, a, b, 0};
      if (!a.degenerate && !b.degenerate) {
        tp.local_index = sign_of((Rational(1) - a.slope()) * (Rational(1) - b.slope()));
      } else {
        const LocalBranch bx = local_branch(pm.f, fx, a);
        const LocalBranch by = local_branch(pm.g, fy, b);
        tp.local_index = static_cast<int>(displacement_winding(bx.function, by.function, bx.lo, bx.hi, by.lo,
                                                               by.hi, bx.integer, by.integer));
      }
      out.push_back(std::move(tp));
    }
  }
  return out;
}

long torus_index_direct(const TorusProductMap& pm, const ProductRegion& region) {
  if (!is_admissible(pm.f, region.u) || !is_admissible(pm.g, region.v)) {
    throw NotAdmissible("product region boundary meets a fixed point");
  }
  long total = 0;
  for (const auto& tp : torus_fixed_points(pm)) {
    if (region.u.contains(tp.x.coordinate()) && region.v.contains(tp.y.coordinate())) total += tp.local_index;
  }
  return total;
}

ProductFormulaReport verify_product_formula(const TorusProductMap& pm, const ProductRegion& region) {
  if (!is_admissible(pm.f, region.u) || !is_admissible(pm.g, region.v)) {
    throw NotAdmissible("product region boundary meets a fixed point");
  }
  ProductFormulaReport r;
  if (fixed_points(pm.f).fix_finite() && fixed_points(pm.g).fix_finite()) r.direct = torus_index_direct(pm, region);
  const TorusProductMap perturbed{fix_finite_perturb(pm.f).map, fix_finite_perturb(pm.g).map};
  r.direct_perturbed = torus_index_direct(perturbed, region);
  r.index_f = index_schirmer(pm.f, region.u);
  r.index_g = index_schirmer(pm.g, region.v);
  return r;
}

LefschetzProductReport verify_lefschetz_product(const NValuedCircleMap& f, const NValuedCircleMap& g) {
  const TorusProductMap perturbed{fix_finite_perturb(f).map, fix_finite_perturb(g).map};
  return {torus_index_direct(perturbed, ProductRegion::whole()), lefschetz(f).value, lefschetz(g).value};
}

}  // namespace nvfix
