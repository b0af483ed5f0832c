#include "nvfix/pl_function.hpp"

#include <algorithm>

#include "nvfix/errors.hpp"

namespace nvfix {

PlFunction::PlFunction(std::vector<Breakpoint> breakpoints) : points_(std::move(breakpoints)) {
  if (points_.size() < 2) throw InvalidArgument("PL function needs at least two breakpoints");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].t < points_[i].t)) {
      throw InvalidArgument("PL breakpoints must have strictly increasing t (at " +
                            points_[i].t.to_string() + ")");
    }
  }
}

PlFunction PlFunction::line(Rational t0, Rational v0, Rational t1, Rational v1) {
  return PlFunction({{std::move(t0), std::move(v0)}, {std::move(t1), std::move(v1)}});
}

Segment PlFunction::segment(std::size_t i) const {
  return {points_[i].t, points_[i].value, points_[i + 1].t, points_[i + 1].value};
}

Rational PlFunction::operator()(const Rational& t) const {
  if (t < start() || t > end()) {
    throw InvalidArgument("parameter " + t.to_string() + " outside [" + start().to_string() +
                          ", " + end().to_string() + "]");
  }
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Breakpoint& b, const Rational& x) { return b.t < x; });
  if (it->t == t) return it->value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  return lo.value + (hi.value - lo.value) * (t - lo.t) / (hi.t - lo.t);
}

Rational PlFunction::slope_left(const Rational& t) const {
  if (!(t > start()) || t > end()) throw InvalidArgument("no left piece at " + t.to_string());
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const Breakpoint& b, const Rational& x) { return b.t < x; });
  const auto i = static_cast<std::size_t>(it - points_.begin()) - 1;
  return segment(i).slope();
}

Rational PlFunction::slope_right(const Rational& t) const {
  if (t < start() || !(t < end())) throw InvalidArgument("no right piece at " + t.to_string());
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](const Rational& x, const Breakpoint& b) { return x < b.t; });
  const auto i = static_cast<std::size_t>(it - points_.begin()) - 1;
  return segment(i).slope();
}

PlFunction PlFunction::shifted(const Rational& offset) const {
  auto pts = points_;
  for (auto& p : pts) p.value += offset;
  return PlFunction(std::move(pts));
}

PlFunction PlFunction::affine_values(const Rational& scale, const Rational& offset) const {
  auto pts = points_;
  for (auto& p : pts) p.value = scale * p.value + offset;
  return PlFunction(std::move(pts));
}

PlFunction PlFunction::affine_domain(const Rational& scale, const Rational& offset) const {
  if (scale.sign() <= 0) throw InvalidArgument("domain scale must be positive");
  auto pts = points_;
  for (auto& p : pts) p.t = scale * p.t + offset;
  return PlFunction(std::move(pts));
}

PlFunction PlFunction::restricted(const Rational& a, const Rational& b) const {
  if (!(a < b) || a < start() || b > end()) {
    throw InvalidArgument("restriction [" + a.to_string() + ", " + b.to_string() +
                          "] not inside the domain");
  }
  std::vector<Breakpoint> pts{{a, (*this)(a)}};
  for (const auto& p : points_) {
    if (p.t > a && p.t < b) pts.push_back(p);
  }
  pts.push_back({b, (*this)(b)});
  return PlFunction(std::move(pts));
}

PlFunction PlFunction::refined(std::span<const Rational> ts) const {
  std::vector<Breakpoint> pts = points_;
  for (const auto& t : ts) {
    if (t > start() && t < end()) pts.push_back({t, (*this)(t)});
  }
  std::sort(pts.begin(), pts.end(), [](const Breakpoint& x, const Breakpoint& y) { return x.t < y.t; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Breakpoint& x, const Breakpoint& y) { return x.t == y.t; }),
            pts.end());
  return PlFunction(std::move(pts));
}

PlFunction PlFunction::concatenated(const PlFunction& next) const {
  if (next.start() != end() || next.start_value() != end_value()) {
    throw InvalidArgument("PL pieces do not join continuously at " + end().to_string());
  }
  auto pts = points_;
  pts.insert(pts.end(), next.points_.begin() + 1, next.points_.end());
  return PlFunction(std::move(pts));
}

PlFunction PlFunction::simplified() const {
  std::vector<Breakpoint> pts{points_.front()};
  for (std::size_t i = 1; i + 1 < points_.size(); ++i) {
    if (segment(i - 1).slope() != segment(i).slope()) pts.push_back(points_[i]);
  }
  pts.push_back(points_.back());
  return PlFunction(std::move(pts));
}

std::vector<Rational> common_breakpoints(std::span<const PlFunction> fs) {
  std::vector<Rational> ts;
  for (const auto& f : fs) {
    for (const auto& p : f.breakpoints()) ts.push_back(p.t);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

}  // namespace nvfix
