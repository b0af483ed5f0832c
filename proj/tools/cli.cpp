#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nvfix/covering.hpp"
#include "nvfix/errors.hpp"
#include "nvfix/harness/suites.hpp"
#include "nvfix/index.hpp"
#include "nvfix/lefschetz.hpp"
#include "nvfix/map_io.hpp"
#include "nvfix/product.hpp"

namespace nvfix::cli {

namespace {

using json = nlohmann::json;

struct Options {
  std::string map_path;
  std::string map_path_2;
  std::string region = "all";
  std::string region_u = "all";
  std::string region_v = "all";
  std::string algorithm = "both";
  std::string emit_perturbed;
  int cover = 2;
  long max_lift_enum = kDefaultMaxLiftEnumeration;
  bool json_out = false;
  std::string json_path;
  harness::VerifyOptions verify;
};

std::string signed_str(long v) { return v > 0 ? "+" + std::to_string(v) : std::to_string(v); }

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

std::string perm_string(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s + "]";
}

NValuedCircleMap load_valid(const std::string& path) {
  NValuedCircleMap map = load_map(path);
  const ValidationReport r = validate(map);
  if (!r.ok()) throw ParseError(path + ": " + r.violations.front().message);
  return map;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const Options& o, std::ostream& out) {
  const NValuedCircleMap map = load_map(o.map_path);
  const ValidationReport r = validate(map);
  if (o.json_out) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back(x.message);
    print_json(out, {{"command", "validate"}, {"map", map_digest(map)}, {"valid", r.ok()}, {"violations", v}});
    return r.ok() ? kOk : kAssertionFailed;
  }
  if (!r.ok()) {
    for (const auto& v : r.violations) out << "violation: " << v.message << "\n";
    return kAssertionFailed;
  }
  out << "valid " << map.n() << "-valued map\n";
  out << "monodromy = " << perm_string(map.monodromy()) << "\n";
  out << "total degree = " << total_degree(map) << "\n";
  out << "split = " << (is_split(map) ? "yes" : "no") << "\n";
  out << "digest = " << map_digest(map) << "\n";
  return kOk;
}

json fix_json(const FixedPointSet& fix) {
  json pts = json::array();
  for (const auto& p : fix.points) {
    pts.push_back({{"t", p.location.coordinate().to_string()},
                   {"strand", p.strand},
                   {"slope_left", p.slope_left.to_string()},
                   {"slope_right", p.slope_right.to_string()},
                   {"index", p.local_index},
                   {"degenerate", p.degenerate}});
  }
  json ivs = json::array();
  for (const auto& iv : fix.intervals) {
    ivs.push_back({{"strand", iv.strand}, {"start", iv.start.to_string()}, {"length", iv.length.to_string()}});
  }
  return {{"points", pts}, {"intervals", ivs}};
}

void print_fix(std::ostream& out, const FixedPointSet& fix) {
  for (const auto& p : fix.points) {
    out << "t = " << p.location.coordinate() << "  strand " << p.strand << "  slope " << p.slope_left;
    if (p.slope_left != p.slope_right) out << " | " << p.slope_right;
    out << "  index " << signed_str(p.local_index) << (p.degenerate ? "  (touching)" : "") << "\n";
  }
  for (const auto& iv : fix.intervals) {
    out << "interval [" << iv.start << ", " << iv.start + iv.length << "]  strand " << iv.strand << "\n";
  }
  if (fix.empty()) out << "no fixed points\n";
}

int cmd_fix(const Options& o, std::ostream& out) {
  const NValuedCircleMap map = load_valid(o.map_path);
  const FixedPointSet fix = fixed_points(map);
  std::optional<Perturbation> p;
  if (!o.emit_perturbed.empty()) {
    p = fix_finite_perturb(map);
    std::ofstream f(o.emit_perturbed);
    if (!f) throw ParseError("cannot write " + o.emit_perturbed);
    f << map_to_json(p->map).dump(2) << "\n";
  }
  if (o.json_out) {
    json j{{"command", "fix"}, {"map", map_digest(map)}, {"fixed", fix_json(fix)}};
    if (p) j["perturbed"] = {{"map", map_digest(p->map)}, {"epsilon", p->epsilon.to_string()}};
    print_json(out, j);
    return kOk;
  }
  print_fix(out, fix);
  if (p) out << "perturbed map (epsilon = " << p->epsilon << ") written to " << o.emit_perturbed << "\n";
  return kOk;
}

int cmd_index(const Options& o, std::ostream& out) {
  const NValuedCircleMap map = load_valid(o.map_path);
  const OpenArcSet region = OpenArcSet::parse(o.region);
  if (!is_admissible(map, region)) {
    throw NotAdmissible("a fixed point lies on the boundary of " + region.to_string());
  }
  std::optional<long> s, c;
  if (o.algorithm != "crossing") s = index_schirmer(map, region);
  if (o.algorithm != "schirmer") c = index_crossing(map, region);
  const bool agree = !s || !c || *s == *c;
  if (o.json_out) {
    json j{{"command", "index"}, {"map", map_digest(map)}, {"region", region.to_string()}, {"pass", agree}};
    if (s) j["schirmer"] = *s;
    if (c) j["crossing"] = *c;
    print_json(out, j);
  } else if (s && c) {
    if (agree) {
      out << "index = " << *s << " (schirmer = crossing)\n";
    } else {
      out << "index mismatch: schirmer = " << *s << ", crossing = " << *c << "\n";
    }
  } else {
    out << "index = " << (s ? *s : *c) << " (" << o.algorithm << ")\n";
  }
  return agree ? kOk : kAssertionFailed;
}

int cmd_lefschetz(const Options& o, std::ostream& out) {
  const NValuedCircleMap map = load_valid(o.map_path);
  const LefschetzValue l = lefschetz(map);
  if (o.json_out) {
    json j{{"command", "lefschetz"}, {"map", map_digest(map)}, {"value", l.value}, {"method", to_string(l.method)}};
    if (l.split_sum) j["split_sum"] = *l.split_sum;
    print_json(out, j);
    return kOk;
  }
  out << "L = " << l.value << " (" << to_string(l.method);
  if (l.split_sum) out << " = " << to_string(LefschetzMethod::SplitSum);
  out << ")\n";
  return kOk;
}

int cmd_lift(const Options& o, std::ostream& out) {
  const NValuedCircleMap map = load_valid(o.map_path);
  const auto lifts = lift_map(map, CyclicCover{o.cover}, o.max_lift_enum);
  if (o.json_out) {
    json arr = json::array();
    for (const auto& l : lifts) arr.push_back({{"sheets", l.sheets}, {"map", map_to_json(l.map)}});
    print_json(out, {{"command", "lift"}, {"map", map_digest(map)}, {"cover", o.cover}, {"lifts", arr}});
    return kOk;
  }
  out << "lifts through the " << o.cover << "-fold cover: " << lifts.size() << "\n";
  for (const auto& l : lifts) {
    std::vector<long> sheets(l.sheets.begin(), l.sheets.end());
    out << "sheets (" << join(sheets) << "): " << serialize_map(l.map) << "\n";
  }
  return kOk;
}

int cmd_average(const Options& o, std::ostream& out) {
  const NValuedCircleMap map = load_valid(o.map_path);
  const OpenArcSet region = OpenArcSet::parse(o.region);
  const AveragingReport r = verify_averaging(map, CyclicCover{o.cover}, region, o.max_lift_enum);
  if (o.json_out) {
    print_json(out, {{"command", "average"},
                     {"map", map_digest(map)},
                     {"cover", o.cover},
                     {"region", region.to_string()},
                     {"base_index", r.base_index},
                     {"translate_indices", r.translate_indices},
                     {"deck_sum", r.deck_sum},
                     {"pass", r.holds()}});
  } else {
    out << "base index = " << r.base_index << "\n";
    out << "translate indices = (" << join(r.translate_indices) << ")\n";
    out << "deck sum = " << r.deck_sum << ", average = " << Rational(r.deck_sum, r.k).to_string() << "\n";
    out << (r.holds() ? "averaging formula holds\n" : "averaging formula FAILS\n");
  }
  return r.holds() ? kOk : kAssertionFailed;
}

int cmd_product(const Options& o, std::ostream& out) {
  const NValuedCircleMap f = load_valid(o.map_path);
  const NValuedCircleMap g = load_valid(o.map_path_2);
  const ProductRegion region{OpenArcSet::parse(o.region_u), OpenArcSet::parse(o.region_v)};
  const TorusProductMap pm = product_map(f, g);
  const ProductFormulaReport r = verify_product_formula(pm, region);
  const LefschetzProductReport l = verify_lefschetz_product(f, g);
  const bool pass = r.holds() && l.holds();
  if (o.json_out) {
    print_json(out, {{"command", "product"},
                     {"maps", {map_digest(f), map_digest(g)}},
                     {"region", region.u.to_string() + " x " + region.v.to_string()},
                     {"split", product_is_split(pm)},
                     {"direct", r.direct_perturbed},
                     {"index_f", r.index_f},
                     {"index_g", r.index_g},
                     {"lefschetz", {{"product", l.direct}, {"f", l.lefschetz_f}, {"g", l.lefschetz_g}}},
                     {"pass", pass}});
  } else {
    out << pm.arity() << "-valued torus map, split = " << (product_is_split(pm) ? "yes" : "no") << "\n";
    out << "direct index = " << r.direct_perturbed << "\n";
    out << "index(f) * index(g) = " << r.index_f << " * " << r.index_g << " = " << r.index_f * r.index_g << "\n";
    out << "L(f x g) = " << l.direct << ", L(f) * L(g) = " << l.lefschetz_f * l.lefschetz_g << "\n";
    out << (pass ? "product formula holds\n" : "product formula FAILS\n");
  }
  return pass ? kOk : kAssertionFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const harness::VerifyReport r = harness::run_verify(o.verify);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& s : r.suites) {
    out << s.suite << " [" << s.candidate << "]: " << s.entries.size() << " checks, " << s.failures()
        << " failures";
    if (const auto* f = s.first_failure()) out << " (first: " << f->case_id << ")";
    out << "\n";
  }
  out << "total: " << r.checks() << " checks, " << r.failures() << " failures\n";
  if (!o.json_path.empty()) {
    json j = r.to_json();
    j["timing"] = {{"seconds", seconds}};
    std::ofstream f(o.json_path);
    if (!f) throw ParseError("cannot write " + o.json_path);
    f << j.dump(2) << "\n";
  }
  return r.failures() == 0 ? kOk : kAssertionFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed point index of PL n-valued circle maps", "nvfix"};
  app.require_subcommand(1);
  Options o;

  const auto map_arg = [&](CLI::App* c) { c->add_option("map", o.map_path, "map JSON file")->required(); };
  const auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.json_out, "print a JSON report"); };
  const auto region_opt = [&](CLI::App* c) {
    c->add_option("--region", o.region, "\"all\", \"empty\" or arcs like \"1/4+1/2,7/8+1/16\"");
  };
  const auto cover_opts = [&](CLI::App* c) {
    c->add_option("--cover", o.cover, "degree k of the cyclic cover")->check(CLI::Range(1, 64));
    c->add_option("--max-lift-enum", o.max_lift_enum, "cap on k^n sheet choices")->check(CLI::PositiveNumber);
  };

  auto* validate_cmd = app.add_subcommand("validate", "check that a map file describes a valid n-valued map");
  map_arg(validate_cmd);
  json_flag(validate_cmd);

  auto* fix_cmd = app.add_subcommand("fix", "list fixed points and fixed intervals");
  map_arg(fix_cmd);
  json_flag(fix_cmd);
  fix_cmd->add_option("--emit-perturbed", o.emit_perturbed, "write a fix-finite perturbation to this file");

  auto* index_cmd = app.add_subcommand("index", "fixed point index on a region");
  map_arg(index_cmd);
  json_flag(index_cmd);
  region_opt(index_cmd);
  index_cmd->add_option("--algorithm", o.algorithm)->check(CLI::IsMember({"schirmer", "crossing", "both"}));

  auto* lefschetz_cmd = app.add_subcommand("lefschetz", "Lefschetz number");
  map_arg(lefschetz_cmd);
  json_flag(lefschetz_cmd);

  auto* lift_cmd = app.add_subcommand("lift", "lifts through a cyclic cover");
  map_arg(lift_cmd);
  json_flag(lift_cmd);
  cover_opts(lift_cmd);

  auto* average_cmd = app.add_subcommand("average", "check the averaging formula over a cyclic cover");
  map_arg(average_cmd);
  json_flag(average_cmd);
  region_opt(average_cmd);
  cover_opts(average_cmd);

  auto* product_cmd = app.add_subcommand("product", "product map on the torus and the product formula");
  product_cmd->add_option("f", o.map_path, "first factor")->required();
  product_cmd->add_option("g", o.map_path_2, "second factor")->required();
  json_flag(product_cmd);
  product_cmd->add_option("--region-u", o.region_u, "region for the first factor");
  product_cmd->add_option("--region-v", o.region_v, "region for the second factor");

  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
  verify_cmd->add_option("--suite", o.verify.suite)
      ->check(CLI::IsMember({"axioms", "averaging", "product", "uniqueness", "all"}));
  verify_cmd->add_option("--seed", o.verify.seed);
  verify_cmd->add_option("--cases", o.verify.cases)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--json", o.json_path, "write the JSON report to this file");
  verify_cmd->add_option("--max-strands", o.verify.generator.max_strands)->check(CLI::Range(1, 8));
  verify_cmd->add_option("--max-breakpoints", o.verify.generator.max_breakpoints)->check(CLI::Range(2, 64));
  verify_cmd->add_option("--max-denominator", o.verify.generator.max_denominator)->check(CLI::Range(2, 1 << 20));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o2, e2;
    app.exit(e, o2, e2);
    out << o2.str();
    err << e2.str();
    return e.get_exit_code() == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*fix_cmd) return cmd_fix(o, out);
    if (*index_cmd) return cmd_index(o, out);
    if (*lefschetz_cmd) return cmd_lefschetz(o, out);
    if (*lift_cmd) return cmd_lift(o, out);
    if (*average_cmd) return cmd_average(o, out);
    if (*product_cmd) return cmd_product(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
  } catch (const NotAdmissible& e) {
    err << "inadmissible: " << e.what() << "\n";
    return kInadmissible;
  } catch (const NoLiftExists& e) {
    err << "inadmissible: " << e.what() << "\n";
    return kInadmissible;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kAssertionFailed;
  }
  return kUsage;
}

}  // namespace nvfix::cli
