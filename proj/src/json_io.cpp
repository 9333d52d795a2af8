#include "pml/json_io.hpp"

#include <fstream>

namespace pml {

Formula parse_any(std::string_view text) {
  ParsedFormula p = parse(text);
  if (auto* f = std::get_if<Formula>(&p)) return *f;
  return std::get<OrdinaryFormula>(p).formula();
}

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw FormatError(std::string("expected an object with field '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  return j;
}

json formulas(const FormulaSet& s) {
  json out = json::array();
  for (Formula f : s) out.push_back(to_string(f));
  return out;
}

FormulaSet formulas_from(const json& j, const char* what) {
  FormulaSet out;
  for (const auto& e : array(j, what)) out.insert(parse_any(text(e, what)));
  return out;
}

std::vector<json> premises_of(const json& j) {
  if (!j.is_object() || !j.contains("premises")) return {};
  const json& p = array(j.at("premises"), "premises");
  return {p.begin(), p.end()};
}

}  // namespace

json to_json(const NdDerivation& d) {
  json premises = json::array();
  for (const auto& p : d.premises) premises.push_back(to_json(p));
  return {{"rule", to_string(d.rule)},
          {"conclusion", {{"hyps", formulas(d.conclusion.hyps)}, {"goal", to_string(d.conclusion.goal)}}},
          {"premises", premises}};
}

NdDerivation nd_from_json(const json& j) {
  NdDerivation d;
  d.rule = nd_rule_from_string(text(field(j, "rule"), "rule"));
  const json& c = field(j, "conclusion");
  d.conclusion.hyps = formulas_from(field(c, "hyps"), "hyps");
  d.conclusion.goal = parse_any(text(field(c, "goal"), "goal"));
  for (const auto& p : premises_of(j)) d.premises.push_back(nd_from_json(p));
  return d;
}

json to_json(const MixedSequent& s) {
  return {{"left", formulas(s.left)}, {"focus", to_string(s.focus)}, {"right", formulas(s.right)}};
}

MixedSequent mixed_sequent_from_json(const json& j) {
  MixedSequent s;
  s.left = formulas_from(field(j, "left"), "left");
  s.focus = parse_any(text(field(j, "focus"), "focus"));
  s.right = j.contains("right") ? formulas_from(j.at("right"), "right") : FormulaSet{};
  return s;
}

json to_json(const ScDerivation& d) {
  json premises = json::array();
  for (const auto& p : d.premises) premises.push_back(to_json(p));
  return {{"rule", to_string(d.rule)}, {"conclusion", to_json(d.conclusion)}, {"premises", premises}};
}

ScDerivation sc_from_json(const json& j) {
  ScDerivation d;
  d.rule = sc_rule_from_string(text(field(j, "rule"), "rule"));
  d.conclusion = mixed_sequent_from_json(field(j, "conclusion"));
  for (const auto& p : premises_of(j)) d.premises.push_back(sc_from_json(p));
  return d;
}

json to_json(const MixedModel& m) {
  RawModel raw = m.to_raw();
  json leq = json::array();
  for (const auto& [w, v] : raw.leq) leq.push_back({w, v});
  json forcing = json::array();
  for (const auto& [w, a] : raw.forcing) forcing.push_back({w, to_string(a)});
  json sig = json::array();
  for (Formula a : raw.signature) sig.push_back(to_string(a));
  return {{"worlds", raw.worlds}, {"leq", leq}, {"forcing", forcing}, {"signature", sig}};
}

RawModel raw_model_from_json(const json& j) {
  RawModel raw;
  for (const auto& w : array(field(j, "worlds"), "worlds")) raw.worlds.push_back(text(w, "world"));
  auto pair_of = [](const json& e, const char* what) {
    if (!e.is_array() || e.size() != 2) throw FormatError(std::string(what) + " entries must be pairs");
    return std::pair{text(e[0], what), text(e[1], what)};
  };
  if (j.contains("leq"))
    for (const auto& e : array(j.at("leq"), "leq")) raw.leq.push_back(pair_of(e, "leq"));
  if (j.contains("forcing"))
    for (const auto& e : array(j.at("forcing"), "forcing")) {
      auto [w, a] = pair_of(e, "forcing");
      raw.forcing.emplace_back(w, parse_atom(a));
    }
  for (const auto& a : array(field(j, "signature"), "signature")) raw.signature.push_back(parse_atom(text(a, "atom")));
  return raw;
}

json to_json(const Label& l, const std::set<std::string>& names) {
  json out = json::object();
  for (const auto& name : names) out[name] = std::string(1, sort_char(l(name)));
  for (const auto& [name, s] : l.entries()) out[name] = std::string(1, sort_char(s));
  return out;
}

Label label_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("a label must be an object mapping variables to m, i or c");
  Label l;
  for (const auto& [name, v] : j.items()) {
    std::string s = text(v, "label entry");
    auto sort = s.size() == 1 ? sort_from_char(s[0]) : std::nullopt;
    if (!sort) throw FormatError("label entry for '" + name + "' must be m, i or c");
    l.set(name, *sort);
  }
  return l;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace pml
