#include "nvfix/harness/axioms.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <thread>

#include "nvfix/chart.hpp"
#include "nvfix/errors.hpp"
#include "nvfix/map_io.hpp"

namespace nvfix::harness {

namespace {

using json = nlohmann::json;

// Outcome of one candidate call; candidates may throw on inputs they reject.
struct Eval {
  std::optional<long> value;
  std::string error;

  json to_json() const { return value ? json(*value) : json(error); }
};

Eval eval(const CandidateIndexFunction& iota, const NValuedCircleMap& map, const OpenArcSet& region) {
  try {
    return {iota(map, region), {}};
  } catch (const std::exception& e) {
    return {std::nullopt, std::string("error: ") + e.what()};
  }
}

CheckEntry entry(std::string suite, std::string case_id, const CandidateIndexFunction& iota,
                 std::vector<std::string> digests, const OpenArcSet& region) {
  CheckEntry e;
  e.suite = std::move(suite);
  e.case_id = std::move(case_id);
  e.candidate = iota.name;
  e.map_digests = std::move(digests);
  e.region = region.to_string();
  return e;
}

std::string case_name(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

int sgn(const Rational& r) { return r.sign(); }

Rational circle_distance(const Rational& a, const Rational& b) {
  const Rational d = (a - b).frac();
  return min(d, Rational(1) - d);
}

// A fixed point or a fixed interval, as a lifted closed range [lo, hi].
struct Feature {
  Rational lo, hi;
};

std::vector<Feature> features_in_arc(const FixedPointSet& fix, const Arc& arc) {
  std::vector<Feature> out;
  for (const auto& p : fix.points) {
    const Rational& x = p.location.coordinate();
    if (arc.contains(x)) out.push_back({arc.lift(x), arc.lift(x)});
  }
  for (const auto& iv : fix.intervals) {
    if (arc.contains(iv.start)) {
      const Rational lo = arc.lift(iv.start);
      out.push_back({lo, lo + iv.length});
    }
  }
  std::sort(out.begin(), out.end(), [](const Feature& a, const Feature& b) { return a.lo < b.lo; });
  return out;
}

// Cuts inside the open gap (a, b): one at the midpoint or two at the thirds.
void cut_gap(std::vector<Rational>& cuts, const Rational& a, const Rational& b, bool two) {
  if (two) {
    cuts.push_back(a + (b - a) / 3);
    cuts.push_back(a + (b - a) * 2 / 3);
  } else {
    cuts.push_back(a + (b - a) / 2);
  }
}

bool piece_has_feature(const std::vector<Feature>& fs, const Rational& a, const Rational& b) {
  return std::any_of(fs.begin(), fs.end(), [&](const Feature& f) { return f.lo > a && f.hi < b; });
}

void add_pieces(RegionPieces& out, const std::vector<Feature>& fs, const std::vector<Rational>& bounds) {
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const Arc piece{bounds[i].frac(), bounds[i + 1] - bounds[i]};
    (piece_has_feature(fs, bounds[i], bounds[i + 1]) ? out.with_fix : out.fix_free).push_back(piece);
  }
}

std::vector<Rational> special_coordinates(const FixedPointSet& fix) {
  std::vector<Rational> s;
  for (const auto& p : fix.points) s.push_back(p.location.coordinate());
  for (const auto& iv : fix.intervals) {
    s.push_back(iv.start);
    s.push_back((iv.start + iv.length).frac());
  }
  return s;
}

bool is_fixed_at(const FixedPointSet& fix, const Rational& x) {
  const CirclePoint p(x);
  for (const auto& q : fix.points) {
    if (q.location == p) return true;
  }
  for (const auto& iv : fix.intervals) {
    if (iv.contains(p.coordinate())) return true;
  }
  return false;
}

// Midpoint of a random gap between special points that is not fixed.
Rational non_fixed_point(const FixedPointSet& fix, Rng& rng) {
  auto s = special_coordinates(fix);
  if (s.empty()) return rng.fraction(0, 126, 127);
  std::sort(s.begin(), s.end());
  std::vector<Rational> candidates;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rational next = i + 1 < s.size() ? s[i + 1] : s[0] + 1;
    const Rational mid = ((s[i] + next) / 2).frac();
    if (!is_fixed_at(fix, mid)) candidates.push_back(mid);
  }
  if (candidates.empty()) throw std::logic_error("no point of the circle is free of fixed points");
  return candidates[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(candidates.size()) - 1))];
}

int boundary_sign_index(const PlFunction& branch, const Rational& a, const Rational& b, const Rational& m) {
  return (sgn(branch(a) - a - m) - sgn(branch(b) - b - m)) / 2;
}

// Classical index of the single fixed point of `map` inside the proper arc,
// from boundary signs of f(x) - x on the branch that carries it.
std::optional<int> classical_index_on_arc(const NValuedCircleMap& map, const Arc& arc, const Rational& p) {
  const Rational u = arc.lift(p);
  for (const auto& br : split_on_arc(map, arc)) {
    const Rational g = br.function(u) - u;
    if (g.is_integer()) return boundary_sign_index(br.function, arc.start, arc.end(), g);
  }
  return std::nullopt;
}

}  // namespace

CandidateIndexFunction schirmer_candidate() { return {"schirmer", index_schirmer}; }
CandidateIndexFunction crossing_candidate() { return {"crossing", index_crossing}; }
CandidateIndexFunction zero_candidate() {
  return {"zero", [](const NValuedCircleMap&, const OpenArcSet&) { return 0L; }};
}
CandidateIndexFunction region_blind_candidate() {
  return {"region-blind", [](const NValuedCircleMap& m, const OpenArcSet&) { return total_degree(m); }};
}
CandidateIndexFunction sign_flipped_candidate() {
  return {"sign-flipped", [](const NValuedCircleMap& m, const OpenArcSet& u) { return -index_schirmer(m, u); }};
}
CandidateIndexFunction shifted_candidate() {
  return {"shifted", [](const NValuedCircleMap& m, const OpenArcSet& u) { return index_schirmer(m, u) + 1; }};
}

std::vector<CandidateIndexFunction> negative_controls() {
  return {zero_candidate(), region_blind_candidate(), sign_flipped_candidate()};
}

json CheckEntry::to_json() const {
  json j{{"suite", suite},
         {"case_id", case_id},
         {"candidate", candidate},
         {"inputs", {{"maps", map_digests}, {"region", region}}},
         {"expected", expected},
         {"got", got},
         {"pass", pass}};
  if (!note.empty()) j["note"] = note;
  return j;
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
}

const CheckEntry* SuiteReport::first_failure() const {
  for (const auto& e : entries) {
    if (!e.pass) return &e;
  }
  return nullptr;
}

unsigned worker_count() {
  if (const char* env = std::getenv("NVFIX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CheckEntry> run_cases(std::size_t count, const std::function<std::vector<CheckEntry>(std::size_t)>& fn) {
  std::vector<std::vector<CheckEntry>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<CheckEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    for (auto& e : results[i]) out.push_back(std::move(e));
  }
  return out;
}

RegionPieces cut_region(const FixedPointSet& fix, const OpenArcSet& region, Rng& rng) {
  RegionPieces out;
  if (region.is_empty()) return out;
  std::vector<Arc> arcs = region.arcs();
  if (region.is_whole_circle()) {
    for (const auto& iv : fix.intervals) {
      if (iv.length >= 1) return out;  // identity strand: nothing can be cut
    }
    arcs = {Arc{non_fixed_point(fix, rng), Rational(1)}};
  }
  for (const auto& arc : arcs) {
    const auto fs = features_in_arc(fix, arc);
    std::vector<Rational> bounds{arc.start};
    if (fs.empty()) {
      if (rng.chance(50)) cut_gap(bounds, arc.start, arc.end(), false);
    } else {
      if (rng.chance(50)) cut_gap(bounds, arc.start, fs.front().lo, false);
      for (std::size_t i = 0; i + 1 < fs.size(); ++i) cut_gap(bounds, fs[i].hi, fs[i + 1].lo, rng.chance(50));
      if (rng.chance(50)) cut_gap(bounds, fs.back().hi, arc.end(), false);
    }
    bounds.push_back(arc.end());
    add_pieces(out, fs, bounds);
  }
  return out;
}

OpenArcSet fixed_neighbourhood(const FixedPointSet& fix, const OpenArcSet& region) {
  if (region.is_empty()) return region;
  for (const auto& iv : fix.intervals) {
    if (iv.length >= 1) return region;
  }
  std::vector<Rational> s = special_coordinates(fix);
  for (const auto& b : region.boundary()) s.push_back(b);
  Rational delta(1, 8);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const Rational d = circle_distance(s[i], s[j]);
      if (d.sign() > 0) delta = min(delta, d / 3);
    }
  }
  std::vector<Arc> arcs;
  for (const auto& p : fix.points) {
    const Rational& x = p.location.coordinate();
    if (region.contains(x)) arcs.push_back({(x - delta).frac(), delta * 2});
  }
  for (const auto& iv : fix.intervals) {
    if (region.contains(iv.start)) arcs.push_back({(iv.start - delta).frac(), iv.length + delta * 2});
  }
  return OpenArcSet(std::move(arcs));
}

SuiteReport check_homotopy_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus) {
  SuiteReport r{"homotopy", iota.name, {}};
  r.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    std::vector<CheckEntry> out;
    if (!c.homotopy) return out;
    const auto& h = *c.homotopy;
    CheckEntry e = entry("homotopy", c.id, iota, {map_digest(h.source()), map_digest(h.target())}, c.region);
    const Eval a = eval(iota, h.source(), c.region);
    const Eval b = eval(iota, h.target(), c.region);
    e.expected = a.to_json();
    e.got = b.to_json();
    e.pass = a.value && b.value && *a.value == *b.value;
    out.push_back(std::move(e));
    return out;
  });
  return r;
}

SuiteReport check_additivity_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus) {
  SuiteReport r{"additivity", iota.name, {}};
  r.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    const FixedPointSet fix = fixed_points(c.map);
    const std::vector<std::string> digest{map_digest(c.map)};
    const Eval whole = eval(iota, c.map, c.region);
    std::vector<CheckEntry> out;

    Rng rng(Rng::derive(corpus.seed, 2, i));
    const RegionPieces pieces = cut_region(fix, c.region, rng);
    std::vector<Arc> all = pieces.with_fix;
    all.insert(all.end(), pieces.fix_free.begin(), pieces.fix_free.end());
    if (!all.empty() || c.region.is_empty()) {
      std::vector<Arc> u1, u2;
      for (const auto& a : all) (rng.chance(50) ? u1 : u2).push_back(a);
      const OpenArcSet r1(std::move(u1)), r2(std::move(u2));
      const Eval e1 = eval(iota, c.map, r1);
      const Eval e2 = eval(iota, c.map, r2);
      CheckEntry e = entry("additivity", c.id + "/partition", iota, digest, c.region);
      e.note = "U1 = " + r1.to_string() + "; U2 = " + r2.to_string();
      e.expected = whole.to_json();
      e.got = (e1.value && e2.value) ? json(*e1.value + *e2.value) : json(e1.error + e2.error);
      e.pass = whole.value && e1.value && e2.value && *whole.value == *e1.value + *e2.value;
      out.push_back(std::move(e));
    }

    {
      const Eval empty = eval(iota, c.map, OpenArcSet::empty());
      CheckEntry e = entry("additivity", c.id + "/empty", iota, digest, OpenArcSet::empty());
      e.expected = 0;
      e.got = empty.to_json();
      e.pass = empty.value && *empty.value == 0;
      out.push_back(std::move(e));
    }

    {
      const OpenArcSet v = fixed_neighbourhood(fix, c.region);
      const Eval ev = eval(iota, c.map, v);
      CheckEntry e = entry("additivity", c.id + "/excision", iota, digest, c.region);
      e.note = "V = " + v.to_string();
      e.expected = whole.to_json();
      e.got = ev.to_json();
      e.pass = whole.value && ev.value && *whole.value == *ev.value;
      out.push_back(std::move(e));
    }

    {
      const bool nonempty = has_fixed_point_in(fix, c.region);
      CheckEntry e = entry("additivity", c.id + "/solution", iota, digest, c.region);
      e.expected = "index 0 or a fixed point in U";
      e.got = json{{"index", whole.to_json()}, {"fixed_point_in_region", nonempty}};
      e.pass = whole.value && (*whole.value == 0 || nonempty);
      out.push_back(std::move(e));
    }
    return out;
  });
  return r;
}

SuiteReport check_splitting_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus) {
  SuiteReport r{"splitting", iota.name, {}};
  r.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    const FixedPointSet fix = fixed_points(c.map);
    const std::vector<std::string> digest{map_digest(c.map)};
    std::vector<CheckEntry> out;

    const auto check_arc = [&](const Arc& arc, const Rational& p, std::string id) {
      const OpenArcSet u({arc});
      const auto expected = classical_index_on_arc(c.map, arc, p);
      const Eval got = eval(iota, c.map, u);
      CheckEntry e = entry("splitting", std::move(id), iota, digest, u);
      e.note = "fixed point " + p.to_string();
      e.expected = expected ? json(*expected) : json("no fixed branch");
      e.got = got.to_json();
      e.pass = expected && got.value && *got.value == *expected;
      out.push_back(std::move(e));
    };

    // The corpus region itself, when it is one proper arc isolating one point.
    if (c.region.arcs().size() == 1 && c.region.arcs()[0].length < 1) {
      const Arc& arc = c.region.arcs()[0];
      const auto fs = features_in_arc(fix, arc);
      if (fs.size() == 1 && fs[0].lo == fs[0].hi) check_arc(arc, fs[0].lo.frac(), c.id + "/region");
    }

    // Small isolating arcs around up to three isolated fixed points.
    const OpenArcSet near = fixed_neighbourhood(fix, OpenArcSet::whole_circle());
    if (near.is_whole_circle()) return out;
    int taken = 0;
    for (const auto& arc : near.arcs()) {
      const auto fs = features_in_arc(fix, arc);
      if (fs.size() != 1 || fs[0].lo != fs[0].hi) continue;
      check_arc(arc, fs[0].lo.frac(), c.id + "/isolated" + std::to_string(taken));
      if (++taken == 3) break;
    }
    return out;
  });
  return r;
}

SuiteReport check_normalization_axiom(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus) {
  SuiteReport r{"normalization", iota.name, {}};
  r.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    Rng rng(Rng::derive(corpus.seed, 4, i));
    const long n = rng.uniform(1, 4);
    const long q = rng.uniform(n + 1, 64);
    std::vector<long> js;
    while (static_cast<long>(js.size()) < n) {
      const long j = rng.uniform(0, q - 1);
      if (std::find(js.begin(), js.end(), j) == js.end()) js.push_back(j);
    }
    std::sort(js.begin(), js.end());
    std::vector<Rational> values;
    for (long j : js) values.emplace_back(j, q);
    const NValuedCircleMap c = constant_map(values);

    const auto pick = static_cast<std::size_t>(rng.uniform(0, n - 1));
    const auto at = [&](std::size_t k) { return values[k % values.size()] + Rational(static_cast<long>(k / values.size())); };
    const Rational v = values[pick];
    const Rational prev = n == 1 ? v - 1 : at(pick + values.size() - 1) - 1;
    const Rational next = n == 1 ? v + 1 : at(pick + 1);
    const Rational room_left = n == 1 ? Rational(1, 2) : v - prev;
    const Rational room_right = n == 1 ? Rational(1, 2) : next - v;
    const Rational a = room_left * rng.fraction(1, 100, 101);
    const Rational b = room_right * rng.fraction(1, 100, 101);
    std::vector<Arc> arcs{{(v - a).frac(), a + b}};
    if (n >= 3 && rng.chance(40)) {
      const Rational next2 = at(pick + 2);
      arcs.push_back({(next + (next2 - next) / 3).frac(), (next2 - next) / 3});
    }
    const OpenArcSet u(std::move(arcs));

    const Eval got = eval(iota, c, u);
    CheckEntry e = entry("normalization", case_name("n", i), iota, {map_digest(c)}, u);
    e.note = "value " + v.to_string();
    e.expected = 1;
    e.got = got.to_json();
    e.pass = got.value && *got.value == 1;
    return std::vector<CheckEntry>{std::move(e)};
  });
  return r;
}

SuiteReport check_chart_invariance(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus) {
  SuiteReport r{"chart", iota.name, {}};
  r.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    Rng rng(Rng::derive(corpus.seed, 5, i));
    const CircleHomeomorphism phi = random_homeomorphism(rng);
    const NValuedCircleMap conj = phi.conjugate(c.map);
    const OpenArcSet image = phi.image(c.region);
    const Eval a = eval(iota, c.map, c.region);
    const Eval b = eval(iota, conj, image);
    CheckEntry e = entry("chart", c.id, iota, {map_digest(c.map), map_digest(conj)}, c.region);
    e.note = "phi(U) = " + image.to_string();
    e.expected = a.to_json();
    e.got = b.to_json();
    e.pass = a.value && b.value && *a.value == *b.value;
    return std::vector<CheckEntry>{std::move(e)};
  });
  return r;
}

SuiteReport differential_uniqueness(const CandidateIndexFunction& a, const CandidateIndexFunction& b,
                                    const AdmissibleCorpus& corpus) {
  SuiteReport r{"uniqueness", a.name + " vs " + b.name, {}};
  const CandidateIndexFunction pair{r.candidate, nullptr};
  r.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    const Eval x = eval(a, c.map, c.region);
    const Eval y = eval(b, c.map, c.region);
    CheckEntry e = entry("uniqueness", c.id, pair, {map_digest(c.map)}, c.region);
    e.expected = x.to_json();
    e.got = y.to_json();
    e.pass = x.value && y.value && *x.value == *y.value;
    return std::vector<CheckEntry>{std::move(e)};
  });
  return r;
}

std::vector<SuiteReport> check_all_axioms(const CandidateIndexFunction& iota, const AdmissibleCorpus& corpus) {
  return {check_homotopy_axiom(iota, corpus), check_additivity_axiom(iota, corpus),
          check_splitting_axiom(iota, corpus), check_normalization_axiom(iota, corpus),
          check_chart_invariance(iota, corpus)};
}

bool brute_force_is_split(const NValuedCircleMap& map) {
  for (int i = 0; i < map.n(); ++i) {
    // The selection starting on strand i closes up iff strand i returns to
    // its own starting value.
    const Rational gap = map.strand(i).end_value() - map.strand(i).start_value();
    if (!gap.is_integer()) return false;
  }
  return true;
}

bool brute_force_product_is_split(const NValuedCircleMap& f, const NValuedCircleMap& g) {
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < g.n(); ++j) {
      const Rational gx = f.strand(i).end_value() - f.strand(i).start_value();
      const Rational gy = g.strand(j).end_value() - g.strand(j).start_value();
      if (!gx.is_integer() || !gy.is_integer()) return false;
    }
  }
  return true;
}

}  // namespace nvfix::harness
