#include "pml/nd.hpp"

#include <algorithm>
#include <array>

namespace pml {

namespace {

constexpr std::array<std::pair<NdRule, const char*>, 12> kRuleNames{{
    {NdRule::Ax, "Ax"},
    {NdRule::W, "W"},
    {NdRule::AndI, "AndI"},
    {NdRule::AndE1, "AndE1"},
    {NdRule::AndE2, "AndE2"},
    {NdRule::OrI1, "OrI1"},
    {NdRule::OrI2, "OrI2"},
    {NdRule::OrE, "OrE"},
    {NdRule::ImpI, "ImpI"},
    {NdRule::ImpE, "ImpE"},
    {NdRule::BotI, "BotI"},
    {NdRule::BotC, "BotC"},
}};

constexpr std::array<std::pair<RuleSet, const char*>, 5> kRuleSetNames{{
    {RuleSet::PML, "pml"},
    {RuleSet::I, "i"},
    {RuleSet::M, "m"},
    {RuleSet::IPrime, "iprime"},
    {RuleSet::PMLVee, "pmlvee"},
}};

}  // namespace

const char* to_string(NdRule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

const char* to_string(RuleSet rs) {
  for (const auto& [set, name] : kRuleSetNames)
    if (set == rs) return name;
  return "?";
}

NdRule nd_rule_from_string(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (name == n) return rule;
  throw FormatError("unknown natural-deduction rule '" + std::string(name) + "'");
}

RuleSet rule_set_from_string(std::string_view name) {
  for (const auto& [set, n] : kRuleSetNames)
    if (name == n) return set;
  throw FormatError("unknown rule set '" + std::string(name) + "' (expected pml, i, m, iprime or pmlvee)");
}

std::size_t arity(NdRule r) {
  switch (r) {
    case NdRule::Ax:
      return 0;
    case NdRule::AndI:
    case NdRule::ImpE:
      return 2;
    case NdRule::OrE:
      return 3;
    default:
      return 1;
  }
}

bool allows(RuleSet rs, NdRule r) {
  switch (rs) {
    case RuleSet::I:
      return r != NdRule::BotC;
    case RuleSet::M:
      return r != NdRule::BotC && r != NdRule::BotI;
    case RuleSet::IPrime:
      return r != NdRule::BotI;
    default:
      return true;
  }
}

std::string to_string(const SimpleSequent& s) {
  std::string out;
  bool first = true;
  for (Formula h : s.hyps) {
    if (!first) out += ", ";
    out += to_string(h);
    first = false;
  }
  out += first ? "|- " : " |- ";
  out += to_string(s.goal);
  return out;
}

std::size_t NdDerivation::height() const {
  std::size_t h = 0;
  for (const auto& p : premises) h = std::max(h, p.height());
  return h + 1;
}

std::size_t NdDerivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

namespace {

using K = DerivationError::Kind;

/// Contexts Γ with Γ ∪ {a} = premise.
std::vector<FormulaSet> discharge_options(const FormulaSet& premise, Formula a) {
  FormulaSet without = premise;
  if (without.erase(a) == 0) return {premise};
  return {without, premise};
}

FormulaSet unite(FormulaSet a, const FormulaSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

struct Mode {
  bool sorted;  // false: ordinary formulas, absurdity rules unrestricted
  RuleSet rule_set;
  OrdinaryLogic logic;

  bool allows(NdRule r) const {
    if (sorted) return pml::allows(rule_set, r);
    switch (logic) {
      case OrdinaryLogic::PLM:
        return r != NdRule::BotI && r != NdRule::BotC;
      case OrdinaryLogic::PLI:
        return r != NdRule::BotC;
      case OrdinaryLogic::PLC:
        return true;
    }
    return true;
  }

  std::string name() const {
    if (sorted) return to_string(rule_set);
    switch (logic) {
      case OrdinaryLogic::PLM:
        return "PLM";
      case OrdinaryLogic::PLI:
        return "PLI";
      case OrdinaryLogic::PLC:
        return "PLC";
    }
    return "?";
  }
};

class Checker {
 public:
  explicit Checker(Mode mode) : mode_(mode) {}

  void check(const NdDerivation& d, const std::string& path) {
    check_formulas(d.conclusion, path);
    if (!mode_.allows(d.rule))
      throw DerivationError(K::ForbiddenRule, path,
                            std::string("rule ") + to_string(d.rule) + " is not allowed in " + mode_.name());
    if (d.premises.size() != arity(d.rule))
      throw DerivationError(K::RuleViolation, path,
                            std::string(to_string(d.rule)) + " takes " + std::to_string(arity(d.rule)) +
                                " premises, got " + std::to_string(d.premises.size()));
    check_node(d, path);
    for (std::size_t k = 0; k < d.premises.size(); ++k)
      check(d.premises[k], path == "root" ? std::to_string(k) : path + "." + std::to_string(k));
  }

 private:
  [[noreturn]] void fail(const std::string& path, const NdDerivation& d, const std::string& why) const {
    throw DerivationError(K::RuleViolation, path, std::string(to_string(d.rule)) + ": " + why);
  }

  void check_formulas(const SimpleSequent& s, const std::string& path) const {
    auto ok = [&](Formula f) { return mode_.sorted ? !f.has_ordinary_vars() : !f.has_sorted_vars(); };
    bool good = ok(s.goal) && std::all_of(s.hyps.begin(), s.hyps.end(), ok);
    if (!good)
      throw DerivationError(K::RuleViolation, path,
                            mode_.sorted ? "sorted derivation contains an ordinary formula"
                                         : "ordinary derivation contains a sorted formula");
  }

  void check_node(const NdDerivation& d, const std::string& path) const {
    const SimpleSequent& c = d.conclusion;
    const auto& p = d.premises;
    auto same_hyps = [&](const SimpleSequent& s) {
      if (s.hyps != c.hyps) fail(path, d, "premise and conclusion contexts differ");
    };
    switch (d.rule) {
      case NdRule::Ax:
        if (c.hyps != FormulaSet{c.goal}) fail(path, d, "conclusion must be A |- A");
        return;
      case NdRule::W: {
        if (p[0].conclusion.goal != c.goal) fail(path, d, "goal changed");
        if (!std::includes(c.hyps.begin(), c.hyps.end(), p[0].conclusion.hyps.begin(), p[0].conclusion.hyps.end()) ||
            c.hyps.size() > p[0].conclusion.hyps.size() + 1)
          fail(path, d, "conclusion context must add at most one formula to the premise context");
        return;
      }
      case NdRule::AndI:
        if (c.goal.kind() != Kind::And || p[0].conclusion.goal != c.goal.lhs() ||
            p[1].conclusion.goal != c.goal.rhs())
          fail(path, d, "premises must prove the two conjuncts of the goal");
        if (c.hyps != unite(p[0].conclusion.hyps, p[1].conclusion.hyps))
          fail(path, d, "conclusion context must be the union of the premise contexts");
        return;
      case NdRule::AndE1:
      case NdRule::AndE2: {
        Formula prem = p[0].conclusion.goal;
        if (prem.kind() != Kind::And || (d.rule == NdRule::AndE1 ? prem.lhs() : prem.rhs()) != c.goal)
          fail(path, d, "premise must be a conjunction with the goal as the selected conjunct");
        same_hyps(p[0].conclusion);
        return;
      }
      case NdRule::OrI1:
      case NdRule::OrI2:
        if (c.goal.kind() != Kind::Or || (d.rule == NdRule::OrI1 ? c.goal.lhs() : c.goal.rhs()) != p[0].conclusion.goal)
          fail(path, d, "goal must be a disjunction with the premise goal as the selected disjunct");
        same_hyps(p[0].conclusion);
        return;
      case NdRule::OrE: {
        Formula dis = p[0].conclusion.goal;
        if (dis.kind() != Kind::Or) fail(path, d, "major premise must prove a disjunction");
        if (p[1].conclusion.goal != c.goal || p[2].conclusion.goal != c.goal)
          fail(path, d, "minor premises must prove the conclusion goal");
        bool matched = false;
        for (const auto& g2 : discharge_options(p[1].conclusion.hyps, dis.lhs()))
          for (const auto& g3 : discharge_options(p[2].conclusion.hyps, dis.rhs()))
            if (c.hyps == unite(unite(p[0].conclusion.hyps, g2), g3)) matched = true;
        if (!matched)
          fail(path, d, "conclusion context must be the union of the premise contexts minus the discharged disjuncts");
        if (mode_.sorted && mode_.rule_set == RuleSet::PMLVee && is_classical(dis) && !is_classical(c.goal))
          fail(path, d, "in pmlvee, eliminating the classical disjunction " + to_string(dis) +
                            " requires a classical conclusion, got " + to_string(c.goal));
        return;
      }
      case NdRule::ImpI: {
        if (c.goal.kind() != Kind::Imp || c.goal.rhs() != p[0].conclusion.goal)
          fail(path, d, "goal must be an implication whose consequent is the premise goal");
        auto options = discharge_options(p[0].conclusion.hyps, c.goal.lhs());
        if (std::find(options.begin(), options.end(), c.hyps) == options.end())
          fail(path, d, "conclusion context must be the premise context minus the antecedent");
        return;
      }
      case NdRule::ImpE: {
        auto fits = [&](Formula major, Formula minor) {
          return major.kind() == Kind::Imp && major.rhs() == c.goal && major.lhs() == minor;
        };
        if (!fits(p[0].conclusion.goal, p[1].conclusion.goal) && !fits(p[1].conclusion.goal, p[0].conclusion.goal))
          fail(path, d, "premises must prove A -> B and A for goal B");
        if (c.hyps != unite(p[0].conclusion.hyps, p[1].conclusion.hyps))
          fail(path, d, "conclusion context must be the union of the premise contexts");
        return;
      }
      case NdRule::BotI:
        if (!p[0].conclusion.goal.is_bottom()) fail(path, d, "premise must prove bot");
        same_hyps(p[0].conclusion);
        if (mode_.sorted && !is_intuitionistic(c.goal))
          throw DerivationError(K::SideConditionViolation, path,
                                "BotI: " + to_string(c.goal) + " is not an intuitionistic formula");
        return;
      case NdRule::BotC:
        if (p[0].conclusion.goal != Formula::neg(Formula::neg(c.goal))) fail(path, d, "premise must prove ~~A for goal A");
        same_hyps(p[0].conclusion);
        if (mode_.sorted && !is_classical(c.goal))
          throw DerivationError(K::SideConditionViolation, path,
                                "BotC: " + to_string(c.goal) + " is not a classical formula");
        return;
    }
  }

  Mode mode_;
};

Formula erase(Formula f) {
  switch (f.kind()) {
    case Kind::Bottom:
      return f;
    case Kind::Var:
      return Formula::ordinary(f.name());
    case Kind::And:
      return Formula::conj(erase(f.lhs()), erase(f.rhs()));
    case Kind::Or:
      return Formula::disj(erase(f.lhs()), erase(f.rhs()));
    case Kind::Imp:
      return Formula::imp(erase(f.lhs()), erase(f.rhs()));
  }
  return f;
}

NdDerivation erase_tree(const NdDerivation& d) {
  NdDerivation out;
  out.rule = d.rule;
  out.conclusion.goal = erase(d.conclusion.goal);
  for (Formula h : d.conclusion.hyps) out.conclusion.hyps.insert(erase(h));
  for (const auto& p : d.premises) out.premises.push_back(erase_tree(p));
  return out;
}

}  // namespace

SimpleSequent check_nd(const NdDerivation& d, RuleSet rs) {
  Checker(Mode{true, rs, OrdinaryLogic::PLC}).check(d, "root");
  return d.conclusion;
}

SimpleSequent check_ordinary(const NdDerivation& d, OrdinaryLogic logic) {
  Checker(Mode{false, RuleSet::PML, logic}).check(d, "root");
  return d.conclusion;
}

OrdinaryDerivation::OrdinaryDerivation(NdDerivation tree) : tree_(std::move(tree)) {
  try {
    check_ordinary(tree_, OrdinaryLogic::PLC);
  } catch (const DerivationError& e) {
    throw DerivationError(K::InvalidDerivation, e.path(), std::string("not a classical derivation: ") + e.what());
  }
}

OrdinaryDerivation erase_labels(const NdDerivation& d) {
  check_nd(d, RuleSet::PML);
  return OrdinaryDerivation(erase_tree(d));
}

}  // namespace pml
