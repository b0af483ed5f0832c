#include "nvfix/harness/suites.hpp"

#include <algorithm>
#include <cstdio>

#include "nvfix/covering.hpp"
#include "nvfix/errors.hpp"
#include "nvfix/lefschetz.hpp"
#include "nvfix/map_io.hpp"
#include "nvfix/product.hpp"

namespace nvfix::harness {

namespace {

using json = nlohmann::json;

// Salts for the per-case random streams of each group.
constexpr std::uint64_t kSaltAveraging = 11;
constexpr std::uint64_t kSaltProduct = 12;
constexpr std::uint64_t kSaltSplit = 13;

CheckEntry make_entry(const char* suite, std::string id, std::vector<std::string> digests, std::string region) {
  CheckEntry e;
  e.suite = suite;
  e.case_id = std::move(id);
  e.candidate = "schirmer";
  e.map_digests = std::move(digests);
  e.region = std::move(region);
  return e;
}

std::string product_region(const OpenArcSet& u, const OpenArcSet& v) { return u.to_string() + " x " + v.to_string(); }

std::string numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

std::string grid_id(int n, long d, int k) {
  return "n" + std::to_string(n) + "-d" + std::to_string(d) + (k > 0 ? "-k" + std::to_string(k) : "");
}

json to_json(const std::vector<long>& v) { return json(v); }

// Averaging and Lefschetz-averaging entries for one (map, k, region).
void averaging_entries(std::vector<CheckEntry>& out, const std::string& id, const NValuedCircleMap& base, int k,
                       const OpenArcSet& region) {
  const std::vector<std::string> digest{map_digest(base)};
  CheckEntry e = make_entry("averaging", id, digest, region.to_string());
  e.note = "k = " + std::to_string(k);
  try {
    const AveragingReport r = verify_averaging(base, CyclicCover{k}, region);
    e.expected = r.base_index;
    e.got = json{{"translates", to_json(r.translate_indices)}, {"deck_sum", r.deck_sum}};
    e.pass = r.holds();
  } catch (const NoLiftExists&) {
    e.expected = nullptr;
    e.got = "no lift";
    e.pass = true;
    e.note += "; no lift exists, identity not applicable";
  }
  out.push_back(std::move(e));

  CheckEntry l = make_entry("lefschetz-averaging", id, digest, "all");
  l.note = "k = " + std::to_string(k);
  try {
    const LefschetzAveragingReport r = verify_lefschetz_averaging(base, CyclicCover{k});
    l.expected = r.base_lefschetz;
    l.got = json{{"translates", to_json(r.translate_lefschetz)}, {"sum", r.sum}};
    l.pass = r.holds();
  } catch (const NoLiftExists&) {
    l.expected = nullptr;
    l.got = "no lift";
    l.pass = true;
    l.note += "; no lift exists, identity not applicable";
  }
  out.push_back(std::move(l));
}

SuiteReport collect(const char* suite, std::vector<CheckEntry>& all) {
  SuiteReport r{suite, "schirmer", {}};
  for (auto& e : all) {
    if (e.suite == suite) r.entries.push_back(e);
  }
  return r;
}

std::vector<SuiteReport> split_by_suite(std::vector<CheckEntry> all, std::initializer_list<const char*> suites) {
  std::vector<SuiteReport> out;
  for (const char* s : suites) out.push_back(collect(s, all));
  return out;
}

}  // namespace

std::size_t VerifyReport::checks() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.entries.size();
  return n;
}

std::size_t VerifyReport::failures() const {
  std::size_t n = 0;
  for (const auto& s : suites) n += s.failures();
  return n;
}

json VerifyReport::to_json() const {
  json summary = json::array();
  json entries = json::array();
  for (const auto& s : suites) {
    summary.push_back({{"suite", s.suite}, {"candidate", s.candidate}, {"checks", s.entries.size()},
                       {"failures", s.failures()}});
    for (const auto& e : s.entries) entries.push_back(e.to_json());
  }
  return json{{"command", "verify"},
              {"suite", options.suite},
              {"seed", options.seed},
              {"cases", options.cases},
              {"checks", checks()},
              {"failures", failures()},
              {"pass", failures() == 0},
              {"suites", std::move(summary)},
              {"entries", std::move(entries)}};
}

const std::vector<std::string>& verify_groups() {
  static const std::vector<std::string> groups{"axioms", "averaging", "product", "uniqueness", "all"};
  return groups;
}

SuiteReport check_negative_controls(const AdmissibleCorpus& corpus) {
  SuiteReport r{"negative-control", "controls", {}};
  auto controls = negative_controls();
  controls.push_back(shifted_candidate());
  for (const auto& c : controls) {
    json rejected = json::array();
    for (const auto& s : check_all_axioms(c, corpus)) {
      if (const CheckEntry* f = s.first_failure()) rejected.push_back({{"suite", s.suite}, {"witness", f->case_id}});
    }
    CheckEntry e;
    e.suite = "negative-control";
    e.case_id = c.name;
    e.candidate = c.name;
    e.region = "corpus";
    e.expected = "rejected by at least one axiom suite";
    e.got = rejected;
    e.pass = !rejected.empty();
    r.entries.push_back(std::move(e));
  }
  return r;
}

std::vector<SuiteReport> verify_axioms(const VerifyOptions& o) {
  const AdmissibleCorpus corpus = make_corpus(o.seed, o.cases, o.generator);
  std::vector<SuiteReport> out;
  for (const auto& c : {schirmer_candidate(), crossing_candidate()}) {
    for (auto& s : check_all_axioms(c, corpus)) out.push_back(std::move(s));
  }
  out.push_back(check_negative_controls(corpus));
  return out;
}

std::vector<SuiteReport> verify_averaging(const VerifyOptions& o) {
  struct Job {
    std::string id;
    NValuedCircleMap map;
    int k;
    bool random_region;
  };
  std::vector<Job> jobs;
  for (int n = 1; n <= 3; ++n) {
    for (long d = -4; d <= 4; ++d) {
      for (int k = 2; k <= 4; ++k) jobs.push_back({grid_id(n, d, k), linear_map(n, d), k, false});
    }
  }
  for (int i = 0; i < o.cases; ++i) {
    Rng rng(Rng::derive(o.seed, kSaltAveraging, static_cast<std::uint64_t>(i)));
    auto map = random_map(rng, o.generator);
    jobs.push_back({numbered("a", static_cast<std::size_t>(i)), std::move(map),
                    static_cast<int>(rng.uniform(2, 4)), true});
  }

  auto entries = run_cases(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    std::vector<CheckEntry> out;
    averaging_entries(out, job.id, job.map, job.k, OpenArcSet::whole_circle());
    if (job.random_region) {
      Rng rng(Rng::derive(o.seed, kSaltAveraging + 100, i));
      const OpenArcSet u = random_region(rng, job.map);
      if (!u.is_whole_circle()) averaging_entries(out, job.id + "/region", job.map, job.k, u);
    }
    return out;
  });

  // Single-valued degree-2 map on the 3-fold cover: every translate has index -1.
  {
    const NValuedCircleMap base = linear_map(1, 2);
    const AveragingReport r = verify_averaging(base, CyclicCover{3}, OpenArcSet::whole_circle());
    CheckEntry e = make_entry("averaging", "named-n1-d2-k3", {map_digest(base)}, "all");
    e.expected = json{{"translates", {-1, -1, -1}}, {"average", -1}};
    e.got = json{{"translates", r.translate_indices}, {"average", r.deck_sum / 3}};
    e.pass = r.holds() && r.translate_indices == std::vector<long>{-1, -1, -1} && r.deck_sum == -3;
    entries.push_back(std::move(e));
  }
  return split_by_suite(std::move(entries), {"averaging", "lefschetz-averaging"});
}

std::vector<SuiteReport> verify_product(const VerifyOptions& o) {
  struct Pair {
    std::string id;
    NValuedCircleMap f, g;
    OpenArcSet u, v;
    std::optional<long> expected_whole;  // for the named cases
  };
  std::vector<Pair> pairs;
  pairs.push_back({"named-2-1x1-2", linear_map(2, 1), linear_map(1, 2), OpenArcSet::whole_circle(),
                   OpenArcSet::whole_circle(), -1});
  pairs.push_back({"named-2-6x1-2", linear_map(2, 6), linear_map(1, 2), OpenArcSet::whole_circle(),
                   OpenArcSet::whole_circle(), 4});
  const int count = 2 * o.cases;
  for (int i = 0; i < count; ++i) {
    Rng rng(Rng::derive(o.seed, kSaltProduct, static_cast<std::uint64_t>(i)));
    auto f = random_map(rng, o.generator);
    auto g = random_map(rng, o.generator);
    auto u = random_region(rng, f);
    auto v = random_region(rng, g);
    pairs.push_back({numbered("p", static_cast<std::size_t>(i)), std::move(f), std::move(g), std::move(u),
                     std::move(v), std::nullopt});
  }

  auto entries = run_cases(pairs.size(), [&](std::size_t i) {
    const Pair& p = pairs[i];
    const std::vector<std::string> digests{map_digest(p.f), map_digest(p.g)};
    const std::string region = product_region(p.u, p.v);
    std::vector<CheckEntry> out;

    const ProductFormulaReport pf = verify_product_formula(product_map(p.f, p.g), {p.u, p.v});
    CheckEntry e = make_entry("product", p.id, digests, region);
    e.expected = p.expected_whole ? json(*p.expected_whole) : json(pf.index_f * pf.index_g);
    e.got = json{{"direct", pf.direct ? json(*pf.direct) : json(nullptr)},
                 {"direct_perturbed", pf.direct_perturbed},
                 {"index_f", pf.index_f},
                 {"index_g", pf.index_g}};
    e.pass = pf.holds() && (!p.expected_whole || *p.expected_whole == pf.direct_perturbed);
    out.push_back(std::move(e));

    // Cross terms vanish when Fix lies in U1 x V1 and the fix-free parts are
    // U2 and V2.
    const NValuedCircleMap f1 = fix_finite_perturb(p.f).map;
    const NValuedCircleMap g1 = fix_finite_perturb(p.g).map;
    const TorusProductMap pm1 = product_map(f1, g1);
    Rng rng(Rng::derive(o.seed, kSaltProduct + 100, i));
    const RegionPieces pu = cut_region(fixed_points(f1), p.u, rng);
    const RegionPieces pv = cut_region(fixed_points(g1), p.v, rng);
    const bool cuttable = (p.u.is_empty() || !pu.with_fix.empty() || !pu.fix_free.empty()) &&
                          (p.v.is_empty() || !pv.with_fix.empty() || !pv.fix_free.empty());
    if (cuttable) {
      const OpenArcSet u1(pu.with_fix), u2(pu.fix_free), v1(pv.with_fix), v2(pv.fix_free);
      const long c12 = torus_index_direct(pm1, {u1, v2});
      const long c21 = torus_index_direct(pm1, {u2, v1});
      const long d11 = torus_index_direct(pm1, {u1, v1});
      const long d22 = torus_index_direct(pm1, {u2, v2});
      CheckEntry c = make_entry("cross-term", p.id, digests, region);
      c.note = "U1 = " + u1.to_string() + "; U2 = " + u2.to_string() + "; V1 = " + v1.to_string() +
               "; V2 = " + v2.to_string();
      c.expected = json{{"U1xV2", 0}, {"U2xV1", 0}, {"sum", pf.direct_perturbed}};
      c.got = json{{"U1xV2", c12}, {"U2xV1", c21}, {"sum", d11 + d22}};
      c.pass = c12 == 0 && c21 == 0 && d11 + d22 == pf.direct_perturbed;
      out.push_back(std::move(c));
    }

    const LefschetzProductReport lp = verify_lefschetz_product(p.f, p.g);
    CheckEntry l = make_entry("lefschetz-product", p.id, digests, "all x all");
    l.expected = lp.lefschetz_f * lp.lefschetz_g;
    l.got = lp.direct;
    l.pass = lp.holds();
    out.push_back(std::move(l));

    const long fg = torus_index_direct(pm1, ProductRegion::whole());
    const long gf = torus_index_direct(product_map(g1, f1), ProductRegion::whole());
    CheckEntry s = make_entry("torus-swap", p.id, digests, "all x all");
    s.expected = fg;
    s.got = gf;
    s.pass = fg == gf;
    out.push_back(std::move(s));
    return out;
  });
  return split_by_suite(std::move(entries), {"product", "cross-term", "lefschetz-product", "torus-swap"});
}

std::vector<SuiteReport> verify_uniqueness(const VerifyOptions& o) {
  const AdmissibleCorpus corpus = make_corpus(o.seed, o.cases, o.generator);
  std::vector<SuiteReport> out;
  out.push_back(differential_uniqueness(schirmer_candidate(), crossing_candidate(), corpus));

  std::vector<std::pair<std::string, NValuedCircleMap>> crabb_maps;
  for (int n = 1; n <= 4; ++n) {
    for (long d = -8; d <= 8; ++d) crabb_maps.emplace_back(grid_id(n, d, 0), linear_map(n, d));
  }
  for (const auto& c : corpus.cases) crabb_maps.emplace_back(c.id, c.map);
  SuiteReport crabb{"crabb", "schirmer, crossing", {}};
  crabb.entries = run_cases(crabb_maps.size(), [&](std::size_t i) {
    const auto& [id, map] = crabb_maps[i];
    const CrabbReport r = verify_crabb(map);
    CheckEntry e = make_entry("crabb", id, {map_digest(map)}, "all");
    e.candidate = crabb.candidate;
    e.expected = r.lefschetz;
    e.got = json{{"schirmer", r.index_schirmer}, {"crossing", r.index_crossing}};
    e.pass = r.holds();
    return std::vector<CheckEntry>{std::move(e)};
  });
  out.push_back(std::move(crabb));

  SuiteReport split{"split-infra", "-", {}};
  split.entries = run_cases(corpus.cases.size(), [&](std::size_t i) {
    const auto& c = corpus.cases[i];
    Rng rng(Rng::derive(o.seed, kSaltSplit, i));
    const Arc arc = random_proper_arc(rng);
    std::vector<CheckEntry> out;

    CheckEntry e = make_entry("split-infra", c.id + "/arc", {map_digest(c.map)}, OpenArcSet({arc}).to_string());
    e.candidate = "-";
    e.expected = c.map.n();
    try {
      const auto branches = split_on_arc(c.map, arc);
      // Branch values must reproduce the map at the arc's midpoint.
      const Rational mid = arc.start + arc.length / 2;
      std::vector<CirclePoint> values;
      for (const auto& b : branches) values.emplace_back(b.function(mid));
      std::sort(values.begin(), values.end());
      e.got = branches.size();
      e.pass = static_cast<int>(branches.size()) == c.map.n() && values == evaluate(c.map, mid.frac());
    } catch (const std::exception& ex) {
      e.got = std::string("error: ") + ex.what();
    }
    out.push_back(std::move(e));

    CheckEntry s = make_entry("split-infra", c.id + "/is-split", {map_digest(c.map)}, "-");
    s.candidate = "-";
    s.expected = brute_force_is_split(c.map);
    s.got = is_split(c.map);
    s.pass = s.expected == s.got;
    out.push_back(std::move(s));

    // Product splitting against a brute-force search over pairs of selections.
    const auto& other = corpus.cases[(i + 1) % corpus.cases.size()].map;
    if (c.map.n() * other.n() <= 4) {
      CheckEntry p = make_entry("split-infra", c.id + "/product-split", {map_digest(c.map), map_digest(other)}, "-");
      p.candidate = "-";
      p.expected = brute_force_product_is_split(c.map, other);
      p.got = product_is_split(product_map(c.map, other));
      p.pass = p.expected == p.got;
      out.push_back(std::move(p));
    }
    return out;
  });
  out.push_back(std::move(split));
  return out;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const auto& groups = verify_groups();
  if (std::find(groups.begin(), groups.end(), options.suite) == groups.end()) {
    throw InvalidArgument("unknown suite '" + options.suite + "'");
  }
  if (options.cases < 1) throw InvalidArgument("--cases must be positive");
  VerifyReport r{options, {}};
  const auto add = [&](std::vector<SuiteReport> s) {
    for (auto& x : s) r.suites.push_back(std::move(x));
  };
  const bool all = options.suite == "all";
  if (all || options.suite == "axioms") add(verify_axioms(options));
  if (all || options.suite == "averaging") add(verify_averaging(options));
  if (all || options.suite == "product") add(verify_product(options));
  if (all || options.suite == "uniqueness") add(verify_uniqueness(options));
  return r;
}

}  // namespace nvfix::harness
