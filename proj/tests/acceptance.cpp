// Acceptance criteria 1-8, one PASS/FAIL line each.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "nvfix/harness/suites.hpp"
#include "nvfix/lefschetz.hpp"
#include "nvfix/product.hpp"
#include "support.hpp"

using namespace nvfix;
using namespace nvfix::harness;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool all_passed(const std::vector<SuiteReport>& suites, const std::string& name, std::ostringstream& why) {
  bool found = false;
  for (const auto& s : suites) {
    if (s.suite != name) continue;
    found = true;
    if (!s.passed()) {
      why << name << " [" << s.candidate << "] failed at " << s.first_failure()->case_id << "; ";
      return false;
    }
  }
  if (!found) why << name << " missing; ";
  return found;
}

std::size_t entries_in(const std::vector<SuiteReport>& suites, const std::string& name) {
  std::size_t n = 0;
  for (const auto& s : suites) {
    if (s.suite == name) n += s.entries.size();
  }
  return n;
}

Outcome linear_grid() {
  Outcome o;
  int checked = 0;
  for (int n = 1; n <= 4; ++n) {
    for (long d = -8; d <= 8; ++d) {
      const auto map = linear_map(n, d);
      const auto whole = OpenArcSet::whole_circle();
      // Hand-solved oracle: |n - d| transverse points of slope d/n.
      const long expected = static_cast<long>(test::linear_fixed_points(n, d).size()) *
                            Rational(1 - Rational(d, n)).sign();
      const long s = index_schirmer(map, whole);
      const long c = index_crossing(map, whole);
      const auto fix = fixed_points(map);
      bool ok = s == n - d && c == n - d;
      if (d != n) ok = ok && expected == n - d && static_cast<long>(fix.points.size()) == std::abs(n - d);
      if (!ok) {
        o.pass = false;
        o.detail += "(" + std::to_string(n) + "," + std::to_string(d) + ") ";
      }
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " maps" + (o.pass ? "" : ", mismatches " + o.detail);
  return o;
}

Outcome crabb() {
  Outcome o;
  std::vector<NValuedCircleMap> maps;
  for (int n = 1; n <= 4; ++n) {
    for (long d = -8; d <= 8; ++d) maps.push_back(linear_map(n, d));
  }
  for (int i = 0; i < 100; ++i) {
    Rng rng(Rng::derive(kSeed, 21, static_cast<std::uint64_t>(i)));
    maps.push_back(random_map(rng));
  }
  int bad = 0;
  for (const auto& m : maps) {
    if (!verify_crabb(m).holds()) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(maps.size()) + " maps, " + std::to_string(bad) + " violations";
  return o;
}

Outcome axioms() {
  VerifyOptions opt;
  opt.seed = kSeed;
  opt.cases = 100;
  const auto suites = verify_axioms(opt);
  std::ostringstream why;
  bool ok = true;
  for (const char* s : {"homotopy", "additivity", "splitting", "normalization", "chart"}) {
    for (const auto& r : suites) {
      if (r.suite == s && (r.candidate == "schirmer" || r.candidate == "crossing") && !r.passed()) {
        why << s << " [" << r.candidate << "] failed at " << r.first_failure()->case_id << "; ";
        ok = false;
      }
    }
  }
  int rejected = 0;
  for (const auto& r : suites) {
    if (r.suite != "negative-control") continue;
    for (const auto& e : r.entries) {
      const bool required = e.candidate == "zero" || e.candidate == "region-blind" || e.candidate == "sign-flipped";
      if (required && e.pass) ++rejected;
    }
  }
  ok = ok && rejected == 3;
  std::size_t checks = 0;
  for (const auto& r : suites) checks += r.entries.size();
  why << checks << " checks, " << rejected << "/3 negative controls rejected";
  return {ok, why.str()};
}

Outcome uniqueness() {
  const auto corpus = make_corpus(kSeed, 500);
  int seam = 0, multi = 0;
  for (const auto& c : corpus.cases) {
    if (c.region.arcs().size() > 1) ++multi;
    for (const auto& a : c.region.arcs()) {
      if (a.end() > 1) {
        ++seam;
        break;
      }
    }
  }
  const auto r = differential_uniqueness(schirmer_candidate(), crossing_candidate(), corpus);
  std::ostringstream why;
  why << r.entries.size() << " cases (" << seam << " seam-crossing, " << multi << " multi-arc), " << r.failures()
      << " divergences";
  return {r.passed() && seam > 0 && multi > 0 && r.entries.size() == 500, why.str()};
}

Outcome averaging() {
  VerifyOptions opt;
  opt.seed = kSeed;
  opt.cases = 100;
  const auto suites = verify_averaging(opt);
  std::ostringstream why;
  bool ok = all_passed(suites, "averaging", why) && all_passed(suites, "lefschetz-averaging", why);
  int grid_with_lift = 0, grid = 0;
  bool named = false;
  for (const auto& s : suites) {
    for (const auto& e : s.entries) {
      if (s.suite == "averaging" && e.case_id.rfind("named", 0) != 0 && e.case_id.rfind("n", 0) == 0 && e.case_id.find("-k") != std::string::npos &&
          e.case_id.find('/') == std::string::npos) {
        ++grid;
        if (e.got != "no lift") ++grid_with_lift;
      }
      if (e.case_id == "named-n1-d2-k3") named = e.pass;
    }
  }
  ok = ok && named && grid == 81;
  why << grid_with_lift << "/" << grid << " grid triples lift, named (1,2,3) " << (named ? "ok" : "failed") << ", "
      << entries_in(suites, "averaging") + entries_in(suites, "lefschetz-averaging") << " checks";
  return {ok, why.str()};
}

Outcome product() {
  VerifyOptions opt;
  opt.seed = kSeed;
  opt.cases = 100;
  const auto suites = verify_product(opt);
  std::ostringstream why;
  bool ok = true;
  for (const char* s : {"product", "cross-term", "lefschetz-product", "torus-swap"}) ok = all_passed(suites, s, why) && ok;
  const std::size_t pairs = entries_in(suites, "product");
  ok = ok && pairs >= 202;
  why << pairs << " pairs incl. named, " << entries_in(suites, "cross-term") << " cross-term checks";
  return {ok, why.str()};
}

Outcome split_infra() {
  int ok_arcs = 0, seam = 0, agree = 0, total = 0, prod = 0, prod_agree = 0;
  std::vector<NValuedCircleMap> maps;
  for (int i = 0; i < 100; ++i) {
    Rng rng(Rng::derive(kSeed, 31, static_cast<std::uint64_t>(i)));
    maps.push_back(random_map(rng));
    const Arc arc = random_proper_arc(rng);
    if (arc.end() > 1) ++seam;
    try {
      const auto branches = split_on_arc(maps.back(), arc);
      bool good = static_cast<int>(branches.size()) == maps.back().n();
      for (const auto& b : branches) good = good && b.function.start() == arc.start && b.function.end() == arc.end();
      if (good) ++ok_arcs;
    } catch (const std::exception&) {
    }
  }
  for (int n = 1; n <= 4; ++n) {
    for (long d = -8; d <= 8; ++d) maps.push_back(linear_map(n, d));
  }
  for (const auto& m : maps) {
    ++total;
    if (brute_force_is_split(m) == is_split(m)) ++agree;
  }
  for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
    if (maps[i].n() * maps[i + 1].n() > 4) continue;
    ++prod;
    if (brute_force_product_is_split(maps[i], maps[i + 1]) == product_is_split(product_map(maps[i], maps[i + 1]))) {
      ++prod_agree;
    }
  }
  std::ostringstream why;
  why << ok_arcs << "/100 arcs split (" << seam << " across the seam), is_split agrees on " << agree << "/" << total
      << " maps and " << prod_agree << "/" << prod << " products";
  return {ok_arcs == 100 && seam > 0 && agree == total && prod_agree == prod, why.str()};
}

Outcome cli_determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  std::vector<std::string> dumps;
  std::ostringstream why;
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    const auto path = dir / ("nvfix_acceptance_" + std::to_string(run) + ".json");
    const std::string cmd = std::string("\"") + NVFIX_BINARY + "\" verify --suite all --seed 7 --cases 100 --json \"" +
                            path.string() + "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    if (status != 0) {
      ok = false;
      why << "run " << run << " exited with status " << status << "; ";
      continue;
    }
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    j.erase("timing");
    dumps.push_back(j.dump());
    std::filesystem::remove(path);
  }
  ok = ok && dumps.size() == 2 && dumps[0] == dumps[1];
  why << (dumps.size() == 2 && dumps[0] == dumps[1] ? "identical reports" : "reports differ") << ", "
      << (dumps.empty() ? 0 : dumps[0].size()) << " bytes";
  return {ok, why.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, "linear-map grid", linear_grid, 5},
      {2, "Crabb identity", crabb, 0},
      {3, "axiom suites", axioms, 60},
      {4, "differential uniqueness", uniqueness, 0},
      {5, "averaging formula", averaging, 0},
      {6, "product formula", product, 60},
      {7, "splitting infrastructure", split_infra, 0},
      {8, "CLI determinism", cli_determinism, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && s >= c.limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s budget";
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", s);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << time << "]" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
