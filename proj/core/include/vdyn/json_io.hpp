#pragma once

// JSON encodings of the engine's values. Decoders validate every invariant
// and throw ValidationError naming the one that failed.
//
//   BinaryWord          "0110"
//   Point               {"pre": "01", "per": "1"}
//   PrefixCode,
//   CylinderSet         ["0", "10", "11"]           (sorted)
//   VElement            [{"u": "0", "v": "1"}, ...] (canonical order)
//   FreeWord            ["a1", "b2^-1"]
//   SemidirectElement   {"k_ab": [...], "k_c": [...], "h": [...]}
//   Configuration       {"sites": [[...], ...], "values": [Point, ...]}
//   Move                {"role": "A" | "B", "elem": VElement}

#include <nlohmann/json.hpp>
#include <vector>

#include "vdyn/groups.hpp"
#include "vdyn/induced.hpp"
#include "vdyn/thompson_v.hpp"
#include "vdyn/words.hpp"

namespace vdyn {

using Json = nlohmann::json;

Json to_json_value(const BinaryWord& w);
Json to_json_value(const Point& x);
Json to_json_value(const PrefixCode& code);
Json to_json_value(const CylinderSet& s);
Json to_json_value(const VElement& f);
Json to_json_value(const FreeWord& w);
Json to_json_value(const SemidirectElement& g);
Json to_json_value(const Configuration& c);
Json to_json_value(const Move& m);
Json to_json_value(const std::vector<Move>& moves);

BinaryWord binary_word_from_json(const Json& j);
/// Accepts {"pre", "per"} or the compact string form "pre(per)".
Point point_from_json(const Json& j);
PrefixCode prefix_code_from_json(const Json& j);
CylinderSet cylinderset_from_json(const Json& j);
VElement velement_from_json(const Json& j);
/// Accepts a token array or a space-separated token string.
FreeWord free_word_from_json(const Json& j, Alphabet alphabet);
SemidirectElement semidirect_from_json(const Json& j);
Configuration configuration_from_json(const Json& j);
Move move_from_json(const Json& j);
std::vector<Move> moves_from_json(const Json& j);

/// Parses text, turning syntax errors into ValidationError.
Json parse_json_text(const std::string& text);

}  // namespace vdyn
