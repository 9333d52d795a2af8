#include "pml/cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "pml/decide.hpp"
#include "pml/json_io.hpp"
#include "pml/labels.hpp"
#include "pml/sequent.hpp"
#include "pml/translate.hpp"

namespace pml::cli {

namespace {

struct Options {
  std::string formula;
  std::string file;
  std::string model_file;
  std::vector<std::string> hyps;
  std::vector<std::string> right;
  std::string logic = "plc";
  std::string ruleset = "pml";
  std::string engine = "both";
  std::string mode;
  std::string world;
  std::size_t max_model_size = 5;
  std::size_t depth = 14;
  bool json = false;
  bool no_cut = false;
};

class Command {
 public:
  Command(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  /// Prints a result and returns its exit code. With --json the result is
  /// wrapped as {"verdict": ..., "certificate": ...}.
  int emit(int code, const std::string& verdict, const json& certificate, const std::string& plain,
           const json& extra = json::object()) {
    if (o_.json) {
      json doc{{"verdict", verdict}, {"certificate", certificate}};
      for (const auto& [k, v] : extra.items()) doc[k] = v;
      out_ << doc.dump(2) << "\n";
    } else {
      out_ << plain << "\n";
    }
    return code;
  }

  FormulaSet hyps() const {
    FormulaSet out;
    for (const auto& h : o_.hyps) out.insert(parse_sorted(h));
    return out;
  }

  DecideConfig config() const { return DecideConfig{o_.max_model_size, engine_from_string(o_.engine)}; }

  int parse_cmd() {
    ParsedFormula p = parse(o_.formula);
    bool ordinary = std::holds_alternative<OrdinaryFormula>(p);
    Formula f = ordinary ? std::get<OrdinaryFormula>(p).formula() : std::get<Formula>(p);
    json cert{{"formula", to_string(f)}, {"kind", ordinary ? "ordinary" : "sorted"}};
    if (!ordinary) {
      cert["classical"] = is_classical(f);
      cert["intuitionistic"] = is_intuitionistic(f);
      cert["minimal"] = is_minimal(f);
    }
    return emit(kOk, "ok", cert, to_string(f));
  }

  int decide_cmd(bool model_only) {
    FormulaSet gamma = hyps();
    Formula goal = parse_sorted(o_.formula);
    Verdict v = decide(gamma, goal, rule_set_from_string(o_.ruleset), config());
    if (std::holds_alternative<Derivable>(v)) return emit(kOk, "Derivable", nullptr, "Derivable");
    if (auto* u = std::get_if<Unknown>(&v))
      return emit(kUnknown, "Unknown", nullptr, "Unknown: " + u->reason, {{"reason", u->reason}});
    const auto& nd = std::get<NotDerivable>(v);
    json model = to_json(nd.model());
    if (model_only) return emit(kRefuted, "NotDerivable", model, model.dump(2));
    return emit(kRefuted, "NotDerivable", {{"model", model}, {"world", nd.world_name()}},
                "NotDerivable (goal fails at " + nd.world_name() + ")\n" + model.dump(2));
  }

  int eval_model_cmd() {
    MixedModel m = load_model();
    Formula goal = parse_sorted(o_.formula);
    if (!o_.world.empty()) {
      bool f = forces(m, o_.world, goal);
      std::string verdict = f ? "Forced" : "NotForced";
      return emit(f ? kOk : kRefuted, verdict, nullptr, verdict + " at " + o_.world);
    }
    std::vector<Formula> gamma;
    for (Formula h : hyps()) gamma.push_back(h);
    if (entails(m, gamma, goal)) return emit(kOk, "Entailed", nullptr, "Entailed");
    std::string failing;
    for (std::size_t w = 0; w < m.size(); ++w)
      if (!forces(m, w, goal)) {
        failing = m.worlds()[w];
        break;
      }
    return emit(kRefuted, "Countermodel", {{"world", failing}}, "Countermodel (goal fails at " + failing + ")");
  }

  MixedModel load_model() {
    RawModel raw = raw_model_from_json(read_json_file(o_.model_file));
    return MixedModel::validate(raw);
  }

  static bool has_ordinary(const NdDerivation& d) {
    auto ordinary = [](Formula f) { return !ordinary_vars(f).empty(); };
    if (ordinary(d.conclusion.goal)) return true;
    for (Formula h : d.conclusion.hyps)
      if (ordinary(h)) return true;
    for (const auto& p : d.premises)
      if (has_ordinary(p)) return true;
    return false;
  }

  static OrdinaryLogic logic_from_string(const std::string& name) {
    if (name == "plm") return OrdinaryLogic::PLM;
    if (name == "pli") return OrdinaryLogic::PLI;
    if (name == "plc") return OrdinaryLogic::PLC;
    throw FormatError("unknown logic '" + name + "' (expected plm, pli or plc)");
  }

  int check_nd_cmd() {
    NdDerivation d = nd_from_json(read_json_file(o_.file));
    RuleSet rs = rule_set_from_string(o_.ruleset);
    const bool ordinary = has_ordinary(d);
    OrdinaryLogic logic = logic_from_string(o_.logic);
    try {
      SimpleSequent s = ordinary ? check_ordinary(d, logic) : check_nd(d, rs);
      return emit(kOk, "Accepted", {{"hyps", to_json(d)["conclusion"]["hyps"]}, {"goal", to_string(s.goal)}},
                  "Accepted: " + to_string(s));
    } catch (const DerivationError& e) {
      return emit(kRefuted, "Rejected", {{"path", e.path()}, {"reason", e.what()}}, std::string("Rejected: ") + e.what());
    }
  }

  int check_sq_cmd() {
    ScDerivation d = sc_from_json(read_json_file(o_.file));
    try {
      MixedSequent s = check_sc(d, !o_.no_cut);
      return emit(kOk, "Accepted", to_json(s), "Accepted: " + to_string(s));
    } catch (const DerivationError& e) {
      return emit(kRefuted, "Rejected", {{"path", e.path()}, {"reason", e.what()}}, std::string("Rejected: ") + e.what());
    }
  }

  int label_formula_cmd() {
    OrdinaryFormula a = parse_ordinary(o_.formula);
    std::vector<Label> labels;
    try {
      labels = minimal_labels(a, config());
    } catch (const NotClassicallyValid& e) {
      return emit(kRefuted, "NotClassicallyValid", nullptr, std::string("NotClassicallyValid: ") + e.what());
    }
    std::set<std::string> names = ordinary_vars(a.formula());
    json cert = json::array();
    std::string plain;
    for (const Label& l : labels) {
      cert.push_back(to_json(l, names));
      plain += (plain.empty() ? "" : "\n") + to_json(l, names).dump();
    }
    return emit(kOk, "MinimalLabels", cert, plain);
  }

  int label_derivation_cmd() {
    NdDerivation tree = nd_from_json(read_json_file(o_.file));
    std::optional<OrdinaryDerivation> d;
    try {
      d.emplace(std::move(tree));
    } catch (const DerivationError& e) {
      return emit(kRefuted, "Rejected", {{"path", e.path()}, {"reason", e.what()}}, std::string("Rejected: ") + e.what());
    }
    std::set<std::string> names;
    collect_names(d->tree(), names);
    json l = to_json(derivation_label(*d), names);
    return emit(kOk, "Label", l, l.dump());
  }

  static void collect_names(const NdDerivation& d, std::set<std::string>& names) {
    auto add = [&](Formula f) {
      auto v = ordinary_vars(f);
      names.insert(v.begin(), v.end());
    };
    add(d.conclusion.goal);
    for (Formula h : d.conclusion.hyps) add(h);
    for (const auto& p : d.premises) collect_names(p, names);
  }

  int good_derivation_cmd() {
    OrdinaryFormula a = parse_ordinary(o_.formula);
    std::optional<GoodDerivation> g;
    try {
      g = good_derivation(a, o_.depth, config());
    } catch (const NotClassicallyValid& e) {
      return emit(kRefuted, "NotClassicallyValid", nullptr, std::string("NotClassicallyValid: ") + e.what());
    }
    if (auto* u = std::get_if<Unknown>(&*g))
      return emit(kUnknown, "Unknown", nullptr, "Unknown: " + u->reason, {{"reason", u->reason}});
    const auto& d = std::get<OrdinaryDerivation>(*g);
    std::set<std::string> names = ordinary_vars(a.formula());
    json tree = to_json(d.tree());
    return emit(kOk, "GoodDerivation", tree, tree.dump(2), {{"label", to_json(derivation_label(d), names)}});
  }

  int translate_cmd() {
    Formula a = parse_sorted(o_.formula);
    Formula t = o_.mode == "m" ? m_translate(a) : i_translate(a);
    return emit(kOk, "ok", to_string(t), to_string(t));
  }

  int search_cutfree_cmd() {
    MixedSequent goal;
    goal.left = hyps();
    goal.focus = parse_sorted(o_.formula);
    for (const auto& r : o_.right) goal.right.insert(parse_sorted(r));
    if (!goal.well_formed()) throw PreconditionViolation("right-hand formulas must be classical");
    auto found = cutfree_search(goal);
    if (!found) return emit(kRefuted, "Exhausted", nullptr, "Exhausted: no cut-free derivation of " + to_string(goal));
    json tree = to_json(*found);
    return emit(kOk, "Derivable", tree, tree.dump(2));
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Propositional mixed logic toolkit", "pml"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pml 0.1.0");

  auto formula_arg = [&](CLI::App* c, const char* what = "Formula") {
    c->add_option("formula", o.formula, what)->required();
  };
  auto hyp_opt = [&](CLI::App* c) { c->add_option("--hyp", o.hyps, "Hypothesis (repeatable)")->allow_extra_args(false); };
  auto json_opt = [&](CLI::App* c) { c->add_flag("--json", o.json, "Machine-readable output"); };
  auto decide_opts = [&](CLI::App* c) {
    c->add_option("--ruleset", o.ruleset, "pml, i, m or iprime")->capture_default_str();
    c->add_option("--max-model-size", o.max_model_size, "Brute-force bound on worlds")
        ->capture_default_str()
        ->check(CLI::Range(1, 8));
    c->add_option("--engine", o.engine, "reduction, brute-force or both")->capture_default_str();
  };

  auto* parse_c = app.add_subcommand("parse", "Parse and pretty-print a formula");
  formula_arg(parse_c);
  json_opt(parse_c);

  auto* decide_c = app.add_subcommand("decide", "Decide derivability; prints a countermodel on failure");
  formula_arg(decide_c, "Goal formula");
  hyp_opt(decide_c);
  decide_opts(decide_c);
  json_opt(decide_c);

  auto* cm_c = app.add_subcommand("countermodel", "Print only the countermodel of a non-derivable sequent");
  formula_arg(cm_c, "Goal formula");
  hyp_opt(cm_c);
  decide_opts(cm_c);
  json_opt(cm_c);

  auto* eval_c = app.add_subcommand("eval-model", "Evaluate a formula or entailment in a model file");
  eval_c->add_option("model", o.model_file, "Model JSON file")->required();
  formula_arg(eval_c);
  hyp_opt(eval_c);
  eval_c->add_option("--world", o.world, "Only check forcing at this world");
  json_opt(eval_c);

  auto* nd_c = app.add_subcommand("check-nd", "Check a natural-deduction derivation file");
  nd_c->add_option("file", o.file, "Derivation JSON file")->required();
  nd_c->add_option("--ruleset", o.ruleset, "pml, i, m, iprime or pmlvee")->capture_default_str();
  nd_c->add_option("--logic", o.logic, "plm, pli or plc, for derivations over ordinary formulas")->capture_default_str();
  json_opt(nd_c);

  auto* sq_c = app.add_subcommand("check-sq", "Check a sequent-calculus derivation file");
  sq_c->add_option("file", o.file, "Derivation JSON file")->required();
  sq_c->add_flag("--no-cut", o.no_cut, "Reject Cut");
  json_opt(sq_c);

  auto* lf_c = app.add_subcommand("label-formula", "Minimal labels of an ordinary tautology");
  formula_arg(lf_c, "Ordinary formula");
  decide_opts(lf_c);
  json_opt(lf_c);

  auto* ld_c = app.add_subcommand("label-derivation", "Minimal label of an ordinary derivation file");
  ld_c->add_option("file", o.file, "Derivation JSON file")->required();
  json_opt(ld_c);

  auto* gd_c = app.add_subcommand("good-derivation", "Search a good derivation of an ordinary tautology");
  formula_arg(gd_c, "Ordinary formula");
  gd_c->add_option("--depth", o.depth, "Height bound")->capture_default_str()->check(CLI::PositiveNumber);
  decide_opts(gd_c);
  json_opt(gd_c);

  auto* tr_c = app.add_subcommand("translate", "Apply the ^m or ^i translation");
  formula_arg(tr_c);
  tr_c->add_option("--mode", o.mode, "m or i")->required()->check(CLI::IsMember({"m", "i"}));
  json_opt(tr_c);

  auto* sc_c = app.add_subcommand("search-cutfree", "Decide cut-free derivability of  hyps |-' formula ; right");
  formula_arg(sc_c, "Focus formula");
  hyp_opt(sc_c);
  sc_c->add_option("--right", o.right, "Classical right-hand formula (repeatable)")->allow_extra_args(false);
  json_opt(sc_c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Command cmd(o, out);
  const std::map<CLI::App*, std::function<int()>> dispatch{
      {parse_c, [&] { return cmd.parse_cmd(); }},
      {decide_c, [&] { return cmd.decide_cmd(false); }},
      {cm_c, [&] { return cmd.decide_cmd(true); }},
      {eval_c, [&] { return cmd.eval_model_cmd(); }},
      {nd_c, [&] { return cmd.check_nd_cmd(); }},
      {sq_c, [&] { return cmd.check_sq_cmd(); }},
      {lf_c, [&] { return cmd.label_formula_cmd(); }},
      {ld_c, [&] { return cmd.label_derivation_cmd(); }},
      {gd_c, [&] { return cmd.good_derivation_cmd(); }},
      {tr_c, [&] { return cmd.translate_cmd(); }},
      {sc_c, [&] { return cmd.search_cutfree_cmd(); }},
  };
  try {
    for (const auto& [sub, fn] : dispatch)
      if (sub->parsed()) return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command given\n";
  return kInputError;
}

}  // namespace pml::cli
