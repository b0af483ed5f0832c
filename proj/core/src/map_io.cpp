#include "nvfix/map_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nvfix/errors.hpp"

namespace nvfix {

using nlohmann::json;

namespace {

Rational rational_field(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a rational string like \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

}  // namespace

NValuedCircleMap map_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("map: expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "strands" && key != "monodromy") {
      throw ParseError("map: unknown field \"" + key + "\"");
    }
  }
  const json& n_field = member(doc, "n", "map");
  if (!n_field.is_number_integer() || n_field.get<long>() < 1) {
    throw ParseError("n: expected a positive integer");
  }
  const auto n = n_field.get<long>();

  const json& strands_field = member(doc, "strands", "map");
  if (!strands_field.is_array()) throw ParseError("strands: expected an array");
  if (static_cast<long>(strands_field.size()) != n) {
    throw ParseError("strands: expected " + std::to_string(n) + " entries, got " +
                     std::to_string(strands_field.size()));
  }

  std::vector<PlFunction> strands;
  for (std::size_t i = 0; i < strands_field.size(); ++i) {
    const std::string where = "strands[" + std::to_string(i) + "]";
    const json& s = strands_field[i];
    if (!s.is_object()) throw ParseError(where + ": expected an object");
    const json& bps = member(s, "breakpoints", where);
    if (!bps.is_array()) throw ParseError(where + ".breakpoints: expected an array");
    std::vector<Breakpoint> points;
    for (std::size_t k = 0; k < bps.size(); ++k) {
      const std::string at = where + ".breakpoints[" + std::to_string(k) + "]";
      if (!bps[k].is_array() || bps[k].size() != 2) throw ParseError(at + ": expected [\"t\", \"v\"]");
      points.push_back({rational_field(bps[k][0], at + "[0]"), rational_field(bps[k][1], at + "[1]")});
    }
    try {
      strands.emplace_back(std::move(points));
    } catch (const InvalidArgument& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  Permutation sigma;
  if (auto it = doc.find("monodromy"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("monodromy: expected an array of integers");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_number_integer()) {
        throw ParseError("monodromy[" + std::to_string(i) + "]: expected an integer");
      }
      sigma.push_back((*it)[i].get<int>());
    }
    if (sigma.empty()) throw ParseError("monodromy: empty array");
  }
  try {
    return NValuedCircleMap(std::move(strands), std::move(sigma));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("map: ") + e.what());
  }
}

NValuedCircleMap parse_map(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON syntax: ") + e.what());
  }
  return map_from_json(doc);
}

NValuedCircleMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_map(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

json map_to_json(const NValuedCircleMap& map) {
  json strands = json::array();
  for (const auto& s : map.strands()) {
    json bps = json::array();
    for (const auto& p : s.breakpoints()) bps.push_back({p.t.to_string(), p.value.to_string()});
    strands.push_back({{"breakpoints", std::move(bps)}});
  }
  return {{"n", map.n()}, {"strands", std::move(strands)}, {"monodromy", map.monodromy()}};
}

std::string serialize_map(const NValuedCircleMap& map) { return map_to_json(map).dump(); }

std::string map_digest(const NValuedCircleMap& map) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : serialize_map(map)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nvfix
