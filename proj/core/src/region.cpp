#include "nvfix/region.hpp"

#include <algorithm>

#include "nvfix/errors.hpp"

namespace nvfix {

namespace {

Rational offset_in_arc(const Arc& arc, const Rational& x) { return (x - arc.start).frac(); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

bool Arc::contains(const Rational& x) const {
  const Rational u = offset_in_arc(*this, x);
  return u.sign() > 0 && u < length;
}

bool Arc::closure_contains(const Rational& x) const {
  const Rational u = offset_in_arc(*this, x);
  return u.sign() == 0 || u <= length;
}

bool Arc::is_endpoint(const Rational& x) const {
  const Rational u = offset_in_arc(*this, x);
  return u.sign() == 0 || (length < 1 && u == length);
}

Rational Arc::lift(const Rational& x) const { return start + offset_in_arc(*this, x); }

OpenArcSet::OpenArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  for (auto& a : arcs_) {
    if (a.length.sign() <= 0 || a.length > 1) {
      throw InvalidArgument("arc length must lie in (0, 1], got " + a.length.to_string());
    }
    a.start = a.start.frac();
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  for (std::size_t i = 0; i + 1 < arcs_.size(); ++i) {
    if (arcs_[i].end() > arcs_[i + 1].start) {
      throw InvalidArgument("arcs overlap near " + arcs_[i + 1].start.to_string());
    }
  }
  if (arcs_.size() > 1 && arcs_.back().end() > arcs_.front().start + 1) {
    throw InvalidArgument("arcs overlap across the seam");
  }
}

OpenArcSet OpenArcSet::whole_circle() {
  OpenArcSet s;
  s.whole_ = true;
  return s;
}

OpenArcSet OpenArcSet::single(Rational start, Rational length) {
  return OpenArcSet({Arc{std::move(start), std::move(length)}});
}

OpenArcSet OpenArcSet::parse(std::string_view text) {
  text = trim(text);
  if (text == "all") return whole_circle();
  if (text == "empty" || text.empty()) return empty();
  std::vector<Arc> arcs;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    // The sign of the start may itself be '+', so split at the last '+'.
    const auto plus = item.rfind('+');
    if (plus == std::string_view::npos || plus == 0) {
      throw ParseError("region item \"" + std::string(item) + "\" is not of the form start+len");
    }
    arcs.push_back({Rational::parse(trim(item.substr(0, plus))),
                    Rational::parse(trim(item.substr(plus + 1)))});
  }
  try {
    return OpenArcSet(std::move(arcs));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad region: ") + e.what());
  }
}

std::string OpenArcSet::to_string() const {
  if (whole_) return "all";
  if (arcs_.empty()) return "empty";
  std::string out;
  for (const auto& a : arcs_) {
    if (!out.empty()) out += ",";
    out += a.start.to_string() + "+" + a.length.to_string();
  }
  return out;
}

bool OpenArcSet::contains(const Rational& x) const {
  if (whole_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.contains(x); });
}

bool OpenArcSet::closure_contains(const Rational& x) const {
  if (whole_) return true;
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.closure_contains(x); });
}

std::vector<Rational> OpenArcSet::boundary() const {
  std::vector<Rational> out;
  for (const auto& a : arcs_) {
    out.push_back(a.start);
    out.push_back(a.end().frac());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool OpenArcSet::on_boundary(const Rational& x) const {
  return std::any_of(arcs_.begin(), arcs_.end(), [&](const Arc& a) { return a.is_endpoint(x); });
}

OpenArcSet OpenArcSet::subset(const std::vector<std::size_t>& which) const {
  if (whole_) throw InvalidArgument("the whole circle has no arc decomposition");
  std::vector<Arc> picked;
  for (auto i : which) picked.push_back(arcs_.at(i));
  return OpenArcSet(std::move(picked));
}

}  // namespace nvfix
