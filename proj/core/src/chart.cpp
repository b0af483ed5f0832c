#include "nvfix/chart.hpp"

#include <algorithm>

#include "nvfix/errors.hpp"

namespace nvfix {

namespace {

// PL function on [lo, hi] through (t, h(t)) for every t in `ts`; h must be
// linear between consecutive parameters.
template <typename Fn>
PlFunction sample(std::vector<Rational> ts, Fn&& h) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<Breakpoint> pts;
  for (auto& t : ts) {
    Rational v = h(t);
    pts.push_back({std::move(t), std::move(v)});
  }
  return PlFunction(std::move(pts)).simplified();
}

}  // namespace

CircleHomeomorphism::CircleHomeomorphism(PlFunction lift) : lift_(std::move(lift)) {
  if (lift_.start() != 0 || lift_.end() != 1) throw InvalidArgument("homeomorphism lift must live on [0, 1]");
  if (lift_.end_value() != lift_.start_value() + 1) {
    throw InvalidArgument("homeomorphism lift must satisfy Phi(1) = Phi(0) + 1");
  }
  for (std::size_t i = 0; i < lift_.segment_count(); ++i) {
    if (lift_.segment(i).slope().sign() <= 0) throw InvalidArgument("homeomorphism lift must be increasing");
  }
}

CircleHomeomorphism CircleHomeomorphism::identity() { return rotation(Rational(0)); }

CircleHomeomorphism CircleHomeomorphism::rotation(const Rational& c) {
  return CircleHomeomorphism(PlFunction::line(0, c, 1, c + 1));
}

Rational CircleHomeomorphism::apply(const Rational& x) const {
  const Rational k = from_integer(x.floor());
  return lift_(x - k) + k;
}

Rational CircleHomeomorphism::apply_inverse(const Rational& y) const {
  const Rational k = from_integer((y - lift_.start_value()).floor());
  const Rational target = y - k;  // in [Phi(0), Phi(0) + 1)
  const auto& pts = lift_.breakpoints();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (target >= pts[i].value && target <= pts[i + 1].value) {
      return pts[i].t + (target - pts[i].value) * (pts[i + 1].t - pts[i].t) / (pts[i + 1].value - pts[i].value) + k;
    }
  }
  throw std::logic_error("inverse lookup failed for " + y.to_string());
}

CircleHomeomorphism CircleHomeomorphism::inverse() const {
  std::vector<Rational> ts{Rational(0), Rational(1)};
  for (const auto& p : lift_.breakpoints()) {
    const Rational f = p.value.frac();
    if (f.sign() != 0) ts.push_back(f);
  }
  const Rational base = apply_inverse(Rational(0));
  // Keep the lift continuous: values are apply_inverse(t) for t in [0, 1].
  return CircleHomeomorphism(sample(std::move(ts), [&](const Rational& t) {
    return t == 1 ? base + 1 : apply_inverse(t);
  }));
}

NValuedCircleMap CircleHomeomorphism::conjugate(const NValuedCircleMap& f) const {
  const CircleHomeomorphism inv = inverse();
  const Rational u0 = inv.apply(Rational(0));
  const Rational k = from_integer(u0.floor());
  const Rational a = u0 - k;

  std::vector<Rational> inv_breaks;
  for (const auto& p : inv.lift().breakpoints()) inv_breaks.push_back(p.t);
  std::vector<Rational> phi_breaks;
  for (const auto& p : lift_.breakpoints()) {
    if (p.t < 1) phi_breaks.push_back(p.t);
  }

  std::vector<PlFunction> strands;
  for (const auto& br : continue_branches(f, a, Rational(1))) {
    // inner(t) = branch(inv(t) - k) on t in [0, 1].
    std::vector<Rational> ts = inv_breaks;
    for (const auto& p : br.function.breakpoints()) {
      const Rational t = apply(p.t + k);
      if (t.sign() > 0 && t < 1) ts.push_back(t);
    }
    const PlFunction inner = sample(ts, [&](const Rational& t) {
      const Rational u = t == 1 ? a + 1 : inv.apply(t) - k;
      return br.function(u);
    });

    // outer(t) = Phi(inner(t)); Phi bends wherever inner crosses a breakpoint
    // of Phi shifted by an integer.
    std::vector<Rational> ts2;
    for (const auto& p : inner.breakpoints()) ts2.push_back(p.t);
    for (std::size_t s = 0; s < inner.segment_count(); ++s) {
      const Segment seg = inner.segment(s);
      if (seg.v0 == seg.v1) continue;
      const Rational lo = min(seg.v0, seg.v1);
      const Rational hi = max(seg.v0, seg.v1);
      for (const auto& b : phi_breaks) {
        for (mpz_class m = (lo - b).ceil(); from_integer(m) + b <= hi; ++m) {
          const Rational target = b + from_integer(m);
          ts2.push_back(seg.t0 + (target - seg.v0) * (seg.t1 - seg.t0) / (seg.v1 - seg.v0));
        }
      }
    }
    strands.push_back(sample(std::move(ts2), [&](const Rational& t) { return apply(inner(t)); }));
  }
  return from_strands(std::move(strands));
}

OpenArcSet CircleHomeomorphism::image(const OpenArcSet& region) const {
  if (region.is_whole_circle() || region.is_empty()) return region;
  std::vector<Arc> arcs;
  for (const auto& arc : region.arcs()) {
    const Rational s = apply(arc.start);
    arcs.push_back({s.frac(), apply(arc.end()) - s});
  }
  return OpenArcSet(std::move(arcs));
}

}  // namespace nvfix
