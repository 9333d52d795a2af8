#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pml/decide.hpp"
#include "pml/json_io.hpp"
#include "pml/labels.hpp"
#include "pml/sequent.hpp"
#include "pml/translate.hpp"

namespace py = pybind11;
using namespace pml;

// Results cross the boundary as JSON text; the Python package decodes them.
namespace {

FormulaSet parse_all(const std::vector<std::string>& texts) {
  FormulaSet out;
  for (const auto& t : texts) out.insert(parse_sorted(t));
  return out;
}

json verdict_json(const Verdict& v) {
  json j{{"verdict", verdict_name(v)}};
  if (auto* nd = std::get_if<NotDerivable>(&v)) {
    j["model"] = to_json(nd->model());
    j["world"] = nd->world_name();
  } else if (auto* u = std::get_if<Unknown>(&v)) {
    j["reason"] = u->reason;
  }
  return j;
}

DecideConfig config(std::size_t max_model_size, const std::string& engine) {
  return DecideConfig{max_model_size, engine_from_string(engine)};
}

std::string parse_formula(const std::string& text) {
  ParsedFormula p = parse(text);
  if (auto* o = std::get_if<OrdinaryFormula>(&p))
    return json{{"formula", to_string(o->formula())}, {"kind", "ordinary"}}.dump();
  Formula f = std::get<Formula>(p);
  return json{{"formula", to_string(f)},
              {"kind", "sorted"},
              {"classical", is_classical(f)},
              {"intuitionistic", is_intuitionistic(f)},
              {"minimal", is_minimal(f)}}
      .dump();
}

std::string decide_formula(const std::string& goal, const std::vector<std::string>& hyps, const std::string& ruleset,
                           std::size_t max_model_size, const std::string& engine) {
  Verdict v = decide(parse_all(hyps), parse_sorted(goal), rule_set_from_string(ruleset),
                     config(max_model_size, engine));
  return verdict_json(v).dump();
}

std::string eval_model(const std::string& model_json, const std::string& formula, const std::string& world) {
  MixedModel m = MixedModel::validate(raw_model_from_json(json::parse(model_json)));
  Formula a = parse_sorted(formula);
  json out = json::object();
  if (!world.empty()) {
    out[world] = forces(m, world, a);
    return out.dump();
  }
  for (std::size_t w = 0; w < m.size(); ++w) out[m.worlds()[w]] = forces(m, w, a);
  return out.dump();
}

std::string labels_of(const std::string& formula) {
  OrdinaryFormula a = parse_ordinary(formula);
  std::set<std::string> names = ordinary_vars(a.formula());
  json out = json::array();
  for (const Label& l : minimal_labels(a)) out.push_back(to_json(l, names));
  return out.dump();
}

std::string good(const std::string& formula, std::size_t depth) {
  OrdinaryFormula a = parse_ordinary(formula);
  GoodDerivation g = good_derivation(a, depth);
  if (auto* u = std::get_if<Unknown>(&g)) return json{{"verdict", "Unknown"}, {"reason", u->reason}}.dump();
  const auto& d = std::get<OrdinaryDerivation>(g);
  return json{{"verdict", "GoodDerivation"},
              {"label", to_json(derivation_label(d), ordinary_vars(a.formula()))},
              {"derivation", to_json(d.tree())}}
      .dump();
}

std::string translate(const std::string& formula, const std::string& mode) {
  Formula a = parse_sorted(formula);
  if (mode == "m") return to_string(m_translate(a));
  if (mode == "i") return to_string(i_translate(a));
  throw FormatError("unknown mode '" + mode + "' (expected m or i)");
}

std::string check_derivation(const std::string& derivation_json, const std::string& ruleset) {
  NdDerivation d = nd_from_json(json::parse(derivation_json));
  try {
    SimpleSequent s = check_nd(d, rule_set_from_string(ruleset));
    return json{{"verdict", "Accepted"}, {"conclusion", to_string(s)}}.dump();
  } catch (const DerivationError& e) {
    return json{{"verdict", "Rejected"}, {"path", e.path()}, {"reason", e.what()}}.dump();
  }
}

std::string search_cutfree(const std::string& focus, const std::vector<std::string>& left,
                           const std::vector<std::string>& right) {
  MixedSequent goal{parse_all(left), parse_sorted(focus), parse_all(right)};
  if (!goal.well_formed()) throw PreconditionViolation("right-hand formulas must be classical");
  auto found = cutfree_search(goal);
  if (!found) return json{{"verdict", "Exhausted"}}.dump();
  return json{{"verdict", "Derivable"}, {"derivation", to_json(*found)}}.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of pypml";

  py::register_exception<Error>(m, "PmlError", PyExc_ValueError);
  py::register_exception<json::exception>(m, "JsonError", PyExc_ValueError);

  m.def("parse", &parse_formula, py::arg("text"));
  m.def("decide", &decide_formula, py::arg("goal"), py::arg("hyps") = std::vector<std::string>{},
        py::arg("ruleset") = "pml", py::arg("max_model_size") = 5, py::arg("engine") = "both",
        py::call_guard<py::gil_scoped_release>());
  m.def("eval_model", &eval_model, py::arg("model"), py::arg("formula"), py::arg("world") = "");
  m.def("minimal_labels", &labels_of, py::arg("formula"), py::call_guard<py::gil_scoped_release>());
  m.def("good_derivation", &good, py::arg("formula"), py::arg("depth") = 14,
        py::call_guard<py::gil_scoped_release>());
  m.def("translate", &translate, py::arg("formula"), py::arg("mode"));
  m.def("check_nd", &check_derivation, py::arg("derivation"), py::arg("ruleset") = "pml");
  m.def("cutfree_search", &search_cutfree, py::arg("focus"), py::arg("left") = std::vector<std::string>{},
        py::arg("right") = std::vector<std::string>{}, py::call_guard<py::gil_scoped_release>());
}
