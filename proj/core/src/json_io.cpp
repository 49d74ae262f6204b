#include "vdyn/json_io.hpp"

#include <sstream>

#include "vdyn/errors.hpp"

namespace vdyn {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

const std::string& as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw ValidationError(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

const Json& as_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  return j;
}

}  // namespace

Json to_json_value(const BinaryWord& w) { return w.str(); }

Json to_json_value(const Point& x) {
  return Json{{"pre", x.preperiod().str()}, {"per", x.period().str()}};
}

Json to_json_value(const PrefixCode& code) {
  Json out = Json::array();
  for (const auto& w : code.words()) out.push_back(w.str());
  return out;
}

Json to_json_value(const CylinderSet& s) {
  Json out = Json::array();
  for (const auto& w : s.words()) out.push_back(w.str());
  return out;
}

Json to_json_value(const VElement& f) {
  Json out = Json::array();
  for (const auto& p : f.pairs()) out.push_back(Json{{"u", p.u.str()}, {"v", p.v.str()}});
  return out;
}

Json to_json_value(const FreeWord& w) { return w.tokens(); }

Json to_json_value(const SemidirectElement& g) {
  return Json{{"k_ab", g.k_ab.tokens()}, {"k_c", g.k_c.tokens()}, {"h", g.h.tokens()}};
}

Json to_json_value(const Configuration& c) {
  Json sites = Json::array();
  for (const auto& s : c.window.sites()) sites.push_back(s.tokens());
  Json values = Json::array();
  for (const auto& v : c.values) values.push_back(to_json_value(v));
  return Json{{"sites", sites}, {"values", values}};
}

Json to_json_value(const Move& m) {
  return Json{{"role", m.role == Role::A ? "A" : "B"}, {"elem", to_json_value(m.elem)}};
}

Json to_json_value(const std::vector<Move>& moves) {
  Json out = Json::array();
  for (const auto& m : moves) out.push_back(to_json_value(m));
  return out;
}

BinaryWord binary_word_from_json(const Json& j) { return BinaryWord(as_string(j, "binary word")); }

Point point_from_json(const Json& j) {
  if (j.is_string()) return parse_point(j.get<std::string>());
  return point_normalize(binary_word_from_json(field(j, "pre")),
                         binary_word_from_json(field(j, "per")));
}

namespace {

std::vector<BinaryWord> words_from_json(const Json& j, const char* what) {
  std::vector<BinaryWord> words;
  for (const auto& w : as_array(j, what)) words.push_back(binary_word_from_json(w));
  return words;
}

}  // namespace

PrefixCode prefix_code_from_json(const Json& j) {
  return PrefixCode(words_from_json(j, "prefix code"));
}

CylinderSet cylinderset_from_json(const Json& j) {
  return cylinderset_reduce(words_from_json(j, "cylinder set"));
}

VElement velement_from_json(const Json& j) {
  std::vector<VPair> pairs;
  for (const auto& p : as_array(j, "element")) {
    pairs.push_back({binary_word_from_json(field(p, "u")), binary_word_from_json(field(p, "v"))});
  }
  if (pairs.empty()) throw ValidationError("element has no pairs");
  return v_from_pairs(pairs);
}

FreeWord free_word_from_json(const Json& j, Alphabet alphabet) {
  std::vector<std::string> tokens;
  if (j.is_string()) {
    std::istringstream in(j.get<std::string>());
    for (std::string t; in >> t;) {
      if (t != "ε") tokens.push_back(t);
    }
  } else {
    for (const auto& t : as_array(j, "word")) tokens.push_back(as_string(t, "letter"));
  }
  return FreeWord::parse(alphabet, tokens);
}

SemidirectElement semidirect_from_json(const Json& j) {
  SemidirectElement g{free_word_from_json(field(j, "k_ab"), Alphabet::AB),
                      free_word_from_json(field(j, "k_c"), Alphabet::C),
                      free_word_from_json(field(j, "h"), Alphabet::D)};
  g.validate();
  return g;
}

Configuration configuration_from_json(const Json& j) {
  std::vector<FreeWord> sites;
  for (const auto& s : as_array(field(j, "sites"), "sites")) {
    sites.push_back(free_word_from_json(s, Alphabet::D));
  }
  Configuration c{Window(std::move(sites)), {}};
  for (const auto& v : as_array(field(j, "values"), "values")) {
    c.values.push_back(point_from_json(v));
  }
  c.validate();
  return c;
}

Move move_from_json(const Json& j) {
  const std::string& role = as_string(field(j, "role"), "role");
  if (role != "A" && role != "B") throw ValidationError("move role must be \"A\" or \"B\"");
  return {role == "A" ? Role::A : Role::B, velement_from_json(field(j, "elem"))};
}

std::vector<Move> moves_from_json(const Json& j) {
  std::vector<Move> out;
  for (const auto& m : as_array(j, "move sequence")) out.push_back(move_from_json(m));
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace vdyn
