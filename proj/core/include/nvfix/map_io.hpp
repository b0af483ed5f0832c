#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nvfix/nmap.hpp"

namespace nvfix {

// Map file format:
//   { "n": 2,
//     "strands": [ { "breakpoints": [["0", "0"], ["1", "1/2"]] }, ... ],
//     "monodromy": [1, 0] }
// Rationals are strings "p/q" or "p"; "monodromy" is 0-based and defaults to
// the identity. Numbers are rejected in rational positions so no value ever
// passes through floating point.

/// Throws ParseError naming the offending field.
NValuedCircleMap map_from_json(const nlohmann::json& doc);
NValuedCircleMap parse_map(std::string_view text);
NValuedCircleMap load_map(const std::filesystem::path& path);

nlohmann::json map_to_json(const NValuedCircleMap& map);
/// Canonical compact serialization.
std::string serialize_map(const NValuedCircleMap& map);

/// 16 hex digits of FNV-1a over serialize_map(); stable across platforms.
std::string map_digest(const NValuedCircleMap& map);

}  // namespace nvfix
