#include "nvfix/nmap.hpp"

#include <algorithm>
#include <sstream>

#include "nvfix/errors.hpp"

namespace nvfix {

bool is_permutation(std::span<const int> p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[static_cast<std::size_t>(v)]) {
      return false;
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

Permutation inverse(std::span<const int> p) {
  Permutation q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return q;
}

NValuedCircleMap::NValuedCircleMap(std::vector<PlFunction> strands, Permutation monodromy)
    : strands_(std::move(strands)), monodromy_(std::move(monodromy)) {
  if (strands_.empty()) throw InvalidArgument("an n-valued map needs n >= 1 strands");
  if (monodromy_.empty()) monodromy_ = identity_permutation(n());
  if (monodromy_.size() != strands_.size()) {
    throw InvalidArgument("monodromy has " + std::to_string(monodromy_.size()) +
                          " entries for " + std::to_string(strands_.size()) + " strands");
  }
  if (!is_permutation(monodromy_)) throw InvalidArgument("monodromy is not a permutation");
  for (std::size_t i = 0; i < strands_.size(); ++i) {
    if (strands_[i].start() != 0 || strands_[i].end() != 1) {
      throw InvalidArgument("strand " + std::to_string(i) + " is not defined on [0, 1]");
    }
  }
}

Rational NValuedCircleMap::winding_offset(int i) const {
  return strand(i).end_value() - strand(monodromy_[static_cast<std::size_t>(i)]).start_value();
}

namespace {

// Violations of s_a - s_b avoiding the integers on [0,1].
void check_pair(const NValuedCircleMap& map, int a, int b, std::vector<Violation>& out) {
  const std::vector<PlFunction> pair{map.strand(a), map.strand(b)};
  const auto ts = common_breakpoints(pair);
  for (std::size_t s = 0; s + 1 < ts.size(); ++s) {
    const Rational d0 = map.strand(a)(ts[s]) - map.strand(b)(ts[s]);
    const Rational d1 = map.strand(a)(ts[s + 1]) - map.strand(b)(ts[s + 1]);
    const Rational lo = min(d0, d1);
    const Rational hi = max(d0, d1);
    if (from_integer(lo.ceil()) > hi) continue;

    Violation v{Violation::Kind::Distinctness, a, b, s, ts[s], ts[s + 1], {}};
    std::ostringstream msg;
    if (d0 == d1) {
      msg << "Distinctness at all t in [" << ts[s] << ", " << ts[s + 1] << "]: strands " << a
          << " and " << b << " differ by the integer " << d0;
    } else {
      // d(t) = m at t = t0 + (m - d0) (t1 - t0) / (d1 - d0).
      const auto at = [&](const Rational& m) {
        return ts[s] + (m - d0) * (ts[s + 1] - ts[s]) / (d1 - d0);
      };
      const Rational m_lo = from_integer(lo.ceil());
      const Rational m_hi = from_integer(hi.floor());
      v.t_lo = min(at(m_lo), at(m_hi));
      v.t_hi = max(at(m_lo), at(m_hi));
      msg << "Distinctness: strands " << a << " and " << b << " coincide mod 1 for t in ["
          << v.t_lo << ", " << v.t_hi << "] (segment " << s << ")";
    }
    v.message = msg.str();
    out.push_back(std::move(v));
  }
}

}  // namespace

ValidationReport validate(const NValuedCircleMap& map) {
  ValidationReport report;
  for (int a = 0; a < map.n(); ++a) {
    for (int b = a + 1; b < map.n(); ++b) check_pair(map, a, b, report.violations);
  }
  for (int i = 0; i < map.n(); ++i) {
    const Rational w = map.winding_offset(i);
    if (w.is_integer()) continue;
    std::ostringstream msg;
    msg << "Closure for strand " << i << ": s_" << i << "(1) - s_" << map.monodromy()[static_cast<std::size_t>(i)]
        << "(0) = " << w << " is not an integer";
    report.violations.push_back({Violation::Kind::Closure, i, -1, std::nullopt, Rational(1), Rational(1), msg.str()});
  }
  return report;
}

void require_valid(const NValuedCircleMap& map) {
  const auto report = validate(map);
  if (!report.ok()) throw InvalidArgument("invalid n-valued map: " + report.violations.front().message);
}

std::vector<CirclePoint> evaluate(const NValuedCircleMap& map, const Rational& t) {
  if (t.sign() < 0 || t >= 1) throw InvalidArgument("evaluate: t = " + t.to_string() + " not in [0, 1)");
  std::vector<CirclePoint> out;
  out.reserve(static_cast<std::size_t>(map.n()));
  for (const auto& s : map.strands()) out.emplace_back(s(t));
  std::sort(out.begin(), out.end());
  return out;
}

long total_degree(const NValuedCircleMap& map) {
  Rational d;
  for (const auto& s : map.strands()) d += s.end_value() - s.start_value();
  return d.to_long();
}

bool is_split(const NValuedCircleMap& map) {
  const auto& p = map.monodromy();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::vector<NValuedCircleMap> split(const NValuedCircleMap& map) {
  if (!is_split(map)) throw NotSplit("map has non-trivial monodromy; no global splitting");
  std::vector<NValuedCircleMap> out;
  for (const auto& s : map.strands()) out.emplace_back(std::vector<PlFunction>{s}, Permutation{0});
  return out;
}

std::vector<Branch> continue_branches(const NValuedCircleMap& map, const Rational& start,
                                      const Rational& length) {
  if (start.sign() < 0 || start >= 1) throw InvalidArgument("branch start must lie in [0, 1)");
  if (length.sign() <= 0 || length > 1) throw InvalidArgument("branch length must lie in (0, 1]");
  const Rational stop = start + length;
  std::vector<Branch> out;
  for (int j = 0; j < map.n(); ++j) {
    PlFunction f = map.strand(j).restricted(start, min(stop, Rational(1)));
    if (stop > 1) {
      const int next = map.monodromy()[static_cast<std::size_t>(j)];
      const PlFunction tail = map.strand(next)
                                  .restricted(Rational(0), stop - 1)
                                  .affine_domain(Rational(1), Rational(1))
                                  .shifted(map.winding_offset(j));
      f = f.concatenated(tail);
    }
    out.push_back({j, std::move(f)});
  }
  return out;
}

std::vector<Branch> split_on_arc(const NValuedCircleMap& map, const Arc& arc) {
  if (!(arc.length < 1)) throw InvalidArgument("split_on_arc needs a proper arc (length < 1)");
  return continue_branches(map, arc.start.frac(), arc.length);
}

NValuedCircleMap constant_map(std::span<const Rational> values) {
  std::vector<Rational> reduced;
  for (const auto& v : values) reduced.push_back(v.frac());
  auto sorted = reduced;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("constant map values must be pairwise distinct mod 1");
  }
  std::vector<PlFunction> strands;
  for (const auto& v : reduced) strands.push_back(PlFunction::line(0, v, 1, v));
  return NValuedCircleMap(std::move(strands), identity_permutation(static_cast<int>(reduced.size())));
}

NValuedCircleMap linear_map(int n, long d) {
  if (n < 1) throw InvalidArgument("linear_map needs n >= 1");
  std::vector<PlFunction> strands;
  Permutation sigma;
  for (int k = 0; k < n; ++k) {
    strands.push_back(PlFunction::line(0, Rational(k, n), 1, Rational(d + k, n)));
    sigma.push_back(static_cast<int>(((k + d) % n + n) % n));
  }
  return NValuedCircleMap(std::move(strands), std::move(sigma));
}

NValuedCircleMap rotated(const NValuedCircleMap& map, const Rational& c) {
  std::vector<PlFunction> strands;
  for (const auto& s : map.strands()) strands.push_back(s.shifted(c));
  return NValuedCircleMap(std::move(strands), map.monodromy());
}

NValuedCircleMap relabeled(const NValuedCircleMap& map, std::span<const int> relabel) {
  if (static_cast<int>(relabel.size()) != map.n() || !is_permutation(relabel)) {
    throw InvalidArgument("relabeling must be a permutation of the strands");
  }
  std::vector<std::optional<PlFunction>> strands(static_cast<std::size_t>(map.n()));
  Permutation sigma(static_cast<std::size_t>(map.n()));
  for (int i = 0; i < map.n(); ++i) {
    const auto to = static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)]);
    strands[to] = map.strand(i);
    sigma[to] = relabel[static_cast<std::size_t>(map.monodromy()[static_cast<std::size_t>(i)])];
  }
  std::vector<PlFunction> out;
  for (auto& s : strands) out.push_back(std::move(*s));
  return NValuedCircleMap(std::move(out), std::move(sigma));
}

NValuedCircleMap from_strands(std::vector<PlFunction> strands) {
  Permutation sigma;
  for (std::size_t i = 0; i < strands.size(); ++i) {
    const Rational end = strands[i].end_value();
    int match = -1;
    for (std::size_t j = 0; j < strands.size(); ++j) {
      if ((end - strands[j].start_value()).is_integer()) {
        match = static_cast<int>(j);
        break;
      }
    }
    if (match < 0) {
      throw InvalidArgument("strand " + std::to_string(i) + " ends at " + end.to_string() +
                            ", which matches no start value mod 1");
    }
    sigma.push_back(match);
  }
  if (!is_permutation(sigma)) throw InvalidArgument("strand end values collide mod 1");
  return NValuedCircleMap(std::move(strands), std::move(sigma));
}

NValuedCircleMap refined(const NValuedCircleMap& map, std::span<const Rational> ts) {
  std::vector<PlFunction> strands;
  for (const auto& s : map.strands()) strands.push_back(s.refined(ts));
  return NValuedCircleMap(std::move(strands), map.monodromy());
}

}  // namespace nvfix
