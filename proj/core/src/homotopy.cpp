#include "nvfix/homotopy.hpp"

#include <algorithm>
#include <sstream>

#include "nvfix/errors.hpp"
#include "nvfix/index.hpp"

namespace nvfix {

namespace {

// Lambda values in [0,1] where m lies between a(l) and b(l), with
// a(l) = a0 + l (a1 - a0) and b(l) = b0 + l (b1 - b0). Returns the hull.
std::pair<Rational, Rational> collision_hull(const Rational& a0, const Rational& a1, const Rational& b0,
                                             const Rational& b1, const Rational& m) {
  std::vector<Rational> cand{Rational(0), Rational(1)};
  if (a1 != a0) cand.push_back((m - a0) / (a1 - a0));
  if (b1 != b0) cand.push_back((m - b0) / (b1 - b0));
  std::erase_if(cand, [](const Rational& l) { return l.sign() < 0 || l > 1; });
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  const auto hits = [&](const Rational& l) {
    const Rational a = a0 + l * (a1 - a0);
    const Rational b = b0 + l * (b1 - b0);
    return min(a, b) <= m && m <= max(a, b);
  };
  std::vector<Rational> in;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (hits(cand[i])) in.push_back(cand[i]);
    if (i + 1 < cand.size() && hits((cand[i] + cand[i + 1]) / 2)) {
      in.push_back(cand[i]);
      in.push_back(cand[i + 1]);
    }
  }
  if (in.empty()) return {Rational(1), Rational(0)};
  return {*std::min_element(in.begin(), in.end()), *std::max_element(in.begin(), in.end())};
}

}  // namespace

NValuedCircleMap StrandHomotopy::at(const Rational& lambda) const {
  if (lambda.sign() < 0 || lambda > 1) throw InvalidArgument("homotopy parameter outside [0, 1]");
  std::vector<PlFunction> strands;
  for (int i = 0; i < source_.n(); ++i) {
    auto pts = source_.strand(i).breakpoints();
    const auto& tgt = target_.strand(i).breakpoints();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      pts[k].value = (Rational(1) - lambda) * pts[k].value + lambda * tgt[k].value;
    }
    strands.emplace_back(std::move(pts));
  }
  return NValuedCircleMap(std::move(strands), source_.monodromy());
}

StrandHomotopy make_homotopy(const NValuedCircleMap& source, const NValuedCircleMap& target) {
  if (source.n() != target.n()) throw MonodromyMismatch("source and target have different n");
  if (source.monodromy() != target.monodromy()) {
    throw MonodromyMismatch("source and target monodromies differ");
  }
  for (int i = 0; i < source.n(); ++i) {
    if (source.winding_offset(i) != target.winding_offset(i)) {
      throw MonodromyMismatch("strand " + std::to_string(i) +
                              " crosses the seam with different integer offsets");
    }
  }

  std::vector<PlFunction> src, tgt;
  for (int i = 0; i < source.n(); ++i) {
    const std::vector<PlFunction> pair{source.strand(i), target.strand(i)};
    const auto ts = common_breakpoints(pair);
    src.push_back(source.strand(i).refined(ts));
    tgt.push_back(target.strand(i).refined(ts));
  }

  // The strand difference is bilinear in (lambda, t) on each refinement cell,
  // so its range over the cell is spanned by the four corner values.
  for (int i = 0; i < source.n(); ++i) {
    for (int j = i + 1; j < source.n(); ++j) {
      const std::vector<PlFunction> four{src[static_cast<std::size_t>(i)], src[static_cast<std::size_t>(j)]};
      const auto ts = common_breakpoints(four);
      const auto& si = src[static_cast<std::size_t>(i)];
      const auto& sj = src[static_cast<std::size_t>(j)];
      const auto& ti = tgt[static_cast<std::size_t>(i)];
      const auto& tj = tgt[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        const Rational a0 = si(ts[k]) - sj(ts[k]);
        const Rational b0 = si(ts[k + 1]) - sj(ts[k + 1]);
        const Rational a1 = ti(ts[k]) - tj(ts[k]);
        const Rational b1 = ti(ts[k + 1]) - tj(ts[k + 1]);
        const Rational lo = min(min(a0, a1), min(b0, b1));
        const Rational hi = max(max(a0, a1), max(b0, b1));
        if (from_integer(lo.ceil()) > hi) continue;

        Rational lam_lo(1), lam_hi(0);
        for (mpz_class m = lo.ceil(); from_integer(m) <= hi; ++m) {
          const auto [l0, l1] = collision_hull(a0, a1, b0, b1, from_integer(m));
          if (l0 <= l1) {
            lam_lo = min(lam_lo, l0);
            lam_hi = max(lam_hi, l1);
          }
        }
        std::ostringstream msg;
        msg << "strands " << i << " and " << j << " collide for lambda in [" << lam_lo << ", " << lam_hi
            << "], t in [" << ts[k] << ", " << ts[k + 1] << "]";
        throw DistinctnessBroken(msg.str());
      }
    }
  }
  return StrandHomotopy(NValuedCircleMap(std::move(src), source.monodromy()),
                        NValuedCircleMap(std::move(tgt), source.monodromy()));
}

bool homotopy_is_admissible(const StrandHomotopy& h, const OpenArcSet& region) {
  for (const auto& b : region.boundary()) {
    for (int i = 0; i < h.source().n(); ++i) {
      const Rational x0 = h.source().strand(i)(b) - b;
      const Rational x1 = h.target().strand(i)(b) - b;
      if (from_integer(min(x0, x1).ceil()) <= max(x0, x1)) return false;
    }
  }
  return true;
}

InvarianceReport verify_homotopy_invariance(const StrandHomotopy& h, const OpenArcSet& region) {
  if (!homotopy_is_admissible(h, region)) {
    throw NotAdmissible("homotopy moves a fixed point across the boundary of " + region.to_string());
  }
  InvarianceReport r;
  r.schirmer_source = index_schirmer(h.source(), region);
  r.schirmer_target = index_schirmer(h.target(), region);
  r.crossing_source = index_crossing(h.source(), region);
  r.crossing_target = index_crossing(h.target(), region);
  return r;
}

}  // namespace nvfix
