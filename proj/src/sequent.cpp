#include "pml/sequent.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace pml {

bool MixedSequent::well_formed() const {
  return std::all_of(right.begin(), right.end(), [](Formula f) { return is_classical(f); });
}

namespace {

std::string join(const FormulaSet& s) {
  std::string out;
  for (Formula f : s) {
    if (!out.empty()) out += ", ";
    out += to_string(f);
  }
  return out;
}

constexpr std::array<std::pair<ScRule, const char*>, 16> kScNames{{
    {ScRule::Ax, "Ax"},
    {ScRule::Cut, "Cut"},
    {ScRule::Sr, "Sr"},
    {ScRule::Sl, "Sl"},
    {ScRule::Wr, "Wr"},
    {ScRule::Wl, "Wl"},
    {ScRule::WrPrime, "WrPrime"},
    {ScRule::E, "E"},
    {ScRule::AndR, "AndR"},
    {ScRule::AndL1, "AndL1"},
    {ScRule::AndL2, "AndL2"},
    {ScRule::OrR1, "OrR1"},
    {ScRule::OrR2, "OrR2"},
    {ScRule::OrL, "OrL"},
    {ScRule::ImpR, "ImpR"},
    {ScRule::ImpL, "ImpL"},
}};

}  // namespace

std::string to_string(const MixedSequent& s) {
  std::string l = join(s.left);
  std::string r = join(s.right);
  return (l.empty() ? "" : l + " ") + "|-' " + to_string(s.focus) + " ;" + (r.empty() ? "" : " " + r);
}

const char* to_string(ScRule r) {
  for (const auto& [rule, name] : kScNames)
    if (rule == r) return name;
  return "?";
}

ScRule sc_rule_from_string(std::string_view name) {
  for (const auto& [rule, n] : kScNames)
    if (name == n) return rule;
  throw FormatError("unknown sequent rule '" + std::string(name) + "'");
}

std::size_t arity(ScRule r) {
  switch (r) {
    case ScRule::Ax:
      return 0;
    case ScRule::Cut:
    case ScRule::AndR:
    case ScRule::OrL:
    case ScRule::ImpL:
      return 2;
    default:
      return 1;
  }
}

std::size_t ScDerivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

namespace {

using K = DerivationError::Kind;

FormulaSet unite(FormulaSet a, const FormulaSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

/// Whether `ctx` plus `a` gives `premise`, i.e. ctx is premise minus a, or
/// premise itself when a is already in it.
bool drops(const FormulaSet& ctx, const FormulaSet& premise, Formula a) {
  if (!premise.contains(a)) return false;
  if (ctx == premise) return true;
  FormulaSet without = premise;
  without.erase(a);
  return ctx == without;
}

/// premise plus at most one formula gives conclusion.
bool adds_at_most_one(const FormulaSet& premise, const FormulaSet& conclusion) {
  return std::includes(conclusion.begin(), conclusion.end(), premise.begin(), premise.end()) &&
         conclusion.size() <= premise.size() + 1;
}

/// Candidate contexts Γ with Γ ∪ {a} = premise.
std::vector<FormulaSet> contexts(const FormulaSet& premise, Formula a) {
  if (!premise.contains(a)) return {};
  FormulaSet without = premise;
  without.erase(a);
  return {without, premise};
}

class ScChecker {
 public:
  explicit ScChecker(bool allow_cut) : allow_cut_(allow_cut) {}

  void check(const ScDerivation& d, const std::string& path) {
    for (Formula f : d.conclusion.right)
      if (!is_classical(f))
        throw DerivationError(K::IllFormedSequent, path,
                              "right-hand formula " + to_string(f) + " is not classical in " + to_string(d.conclusion));
    if (d.rule == ScRule::Cut && !allow_cut_) throw DerivationError(K::CutForbidden, path, "Cut is not allowed");
    if (d.premises.size() != arity(d.rule))
      throw DerivationError(K::RuleViolation, path,
                            std::string(to_string(d.rule)) + " takes " + std::to_string(arity(d.rule)) +
                                " premises, got " + std::to_string(d.premises.size()));
    for (std::size_t k = 0; k < d.premises.size(); ++k)
      check(d.premises[k], path == "root" ? std::to_string(k) : path + "." + std::to_string(k));
    check_node(d, path);
  }

 private:
  [[noreturn]] static void fail(const std::string& path, const ScDerivation& d, const std::string& why) {
    throw DerivationError(K::RuleViolation, path, std::string(to_string(d.rule)) + ": " + why);
  }

  static void check_node(const ScDerivation& d, const std::string& path) {
    const MixedSequent& c = d.conclusion;
    const auto& p = d.premises;
    auto same_left = [&](const MixedSequent& s) {
      if (s.left != c.left) fail(path, d, "left context changed");
    };
    auto same_right = [&](const MixedSequent& s) {
      if (s.right != c.right) fail(path, d, "right context changed");
    };
    auto same_focus = [&](const MixedSequent& s) {
      if (s.focus != c.focus) fail(path, d, "focus changed");
    };

    switch (d.rule) {
      case ScRule::Ax:
        if (c.left != FormulaSet{c.focus} || !c.right.empty()) fail(path, d, "conclusion must be A |-' A ;");
        return;
      case ScRule::Cut: {
        auto fits = [&](const MixedSequent& major, const MixedSequent& minor) {
          if (major.focus != c.focus || c.right != unite(major.right, minor.right)) return false;
          for (const auto& g1 : contexts(major.left, minor.focus))
            if (c.left == unite(g1, minor.left)) return true;
          return false;
        };
        if (!fits(p[0].conclusion, p[1].conclusion) && !fits(p[1].conclusion, p[0].conclusion))
          fail(path, d, "premises must be G1, A |-' B ; D1 and G2 |-' A ; D2 for conclusion G1, G2 |-' B ; D1, D2");
        return;
      }
      case ScRule::Sr:
        same_left(p[0].conclusion);
        same_focus(p[0].conclusion);
        if (!drops(c.right, p[0].conclusion.right, Formula::bottom()))
          fail(path, d, "premise right side must be the conclusion's plus bot");
        return;
      case ScRule::Sl:
        same_left(p[0].conclusion);
        same_focus(p[0].conclusion);
        if (!drops(c.right, p[0].conclusion.right, c.focus))
          fail(path, d, "premise right side must be the conclusion's plus the focus");
        return;
      case ScRule::Wr:
        same_left(p[0].conclusion);
        same_right(p[0].conclusion);
        if (!p[0].conclusion.focus.is_bottom()) fail(path, d, "premise focus must be bot");
        if (!is_intuitionistic(c.focus))
          throw DerivationError(K::SideConditionViolation, path,
                                "Wr: " + to_string(c.focus) + " is not an intuitionistic formula");
        return;
      case ScRule::Wl:
        same_focus(p[0].conclusion);
        same_right(p[0].conclusion);
        if (!adds_at_most_one(p[0].conclusion.left, c.left)) fail(path, d, "conclusion must add one formula on the left");
        return;
      case ScRule::WrPrime:
        same_focus(p[0].conclusion);
        same_left(p[0].conclusion);
        if (!adds_at_most_one(p[0].conclusion.right, c.right))
          fail(path, d, "conclusion must add one formula on the right");
        return;
      case ScRule::E: {
        const MixedSequent& q = p[0].conclusion;
        same_left(q);
        Formula a = q.focus;
        Formula b = c.focus;
        if (!c.right.contains(a) || !q.right.contains(b))
          fail(path, d, "premise must be G |-' A ; B, D with conclusion G |-' B ; A, D");
        if (!is_classical(a))
          throw DerivationError(K::SideConditionViolation, path, "E: " + to_string(a) + " is not a classical formula");
        bool ok = false;
        for (const auto& delta : contexts(q.right, b))
          if (c.right == unite(delta, {a})) ok = true;
        if (!ok) fail(path, d, "right contexts do not match");
        return;
      }
      case ScRule::AndR:
        if (c.focus.kind() != Kind::And || p[0].conclusion.focus != c.focus.lhs() ||
            p[1].conclusion.focus != c.focus.rhs())
          fail(path, d, "premises must prove the two conjuncts of the focus");
        if (c.left != unite(p[0].conclusion.left, p[1].conclusion.left) ||
            c.right != unite(p[0].conclusion.right, p[1].conclusion.right))
          fail(path, d, "conclusion contexts must be the unions of the premise contexts");
        return;
      case ScRule::AndL1:
      case ScRule::AndL2: {
        same_focus(p[0].conclusion);
        same_right(p[0].conclusion);
        bool ok = false;
        for (Formula f : c.left) {
          if (f.kind() != Kind::And) continue;
          Formula part = d.rule == ScRule::AndL1 ? f.lhs() : f.rhs();
          for (const auto& g : contexts(p[0].conclusion.left, part))
            if (c.left == unite(g, {f})) ok = true;
        }
        if (!ok) fail(path, d, "no conjunction on the left matches the premise");
        return;
      }
      case ScRule::OrR1:
      case ScRule::OrR2:
        same_left(p[0].conclusion);
        same_right(p[0].conclusion);
        if (c.focus.kind() != Kind::Or ||
            (d.rule == ScRule::OrR1 ? c.focus.lhs() : c.focus.rhs()) != p[0].conclusion.focus)
          fail(path, d, "focus must be a disjunction with the premise focus as the selected disjunct");
        return;
      case ScRule::OrL: {
        if (p[0].conclusion.focus != c.focus || p[1].conclusion.focus != c.focus)
          fail(path, d, "premises must prove the conclusion focus");
        if (c.right != unite(p[0].conclusion.right, p[1].conclusion.right))
          fail(path, d, "conclusion right side must be the union of the premise right sides");
        bool ok = false;
        for (Formula f : c.left) {
          if (f.kind() != Kind::Or) continue;
          for (const auto& g1 : contexts(p[0].conclusion.left, f.lhs()))
            for (const auto& g2 : contexts(p[1].conclusion.left, f.rhs()))
              if (c.left == unite(unite(g1, g2), {f})) ok = true;
        }
        if (!ok) fail(path, d, "no disjunction on the left matches the premises");
        return;
      }
      case ScRule::ImpR: {
        same_right(p[0].conclusion);
        if (c.focus.kind() != Kind::Imp || c.focus.rhs() != p[0].conclusion.focus)
          fail(path, d, "focus must be an implication whose consequent is the premise focus");
        auto options = contexts(p[0].conclusion.left, c.focus.lhs());
        if (std::find(options.begin(), options.end(), c.left) == options.end())
          fail(path, d, "conclusion left side must be the premise's minus the antecedent");
        return;
      }
      case ScRule::ImpL: {
        const MixedSequent& q1 = p[0].conclusion;
        const MixedSequent& q2 = p[1].conclusion;
        if (q2.focus != c.focus) fail(path, d, "second premise must prove the conclusion focus");
        if (c.right != unite(q1.right, q2.right))
          fail(path, d, "conclusion right side must be the union of the premise right sides");
        bool ok = false;
        for (Formula f : c.left) {
          if (f.kind() != Kind::Imp || f.lhs() != q1.focus) continue;
          for (const auto& g2 : contexts(q2.left, f.rhs()))
            if (c.left == unite(unite(q1.left, g2), {f})) ok = true;
        }
        if (!ok) fail(path, d, "no implication on the left matches the premises");
        return;
      }
    }
  }

  bool allow_cut_;
};

}  // namespace

MixedSequent check_sc(const ScDerivation& d, bool allow_cut) {
  ScChecker(allow_cut).check(d, "root");
  return d.conclusion;
}

SimpleSequent neg_delta(const MixedSequent& s) {
  SimpleSequent out{s.left, s.focus};
  for (Formula f : s.right) out.hyps.insert(Formula::neg(f));
  return out;
}

// --- cut-free search -----------------------------------------------------
//
// Weakening on both sides makes cut-free derivability upward closed in the
// two contexts. So it suffices to apply every rule with the largest premises
// it allows (full contexts, principal formula kept) and to read Ax as
// "focus occurs on the left". Starting from the goal this only ever adds
// subformulas and bot, so the reachable states are finite and derivability
// is their least fixpoint.

namespace {

struct Step {
  ScRule rule;
  std::vector<std::size_t> premises;
};

class CutFreeSearch {
 public:
  explicit CutFreeSearch(const MixedSequent& goal) { intern(goal); }

  std::optional<ScDerivation> run() {
    for (std::size_t k = 0; k < states_.size(); ++k) expand(k);

    proof_.assign(states_.size(), std::nullopt);
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<std::optional<Step>> next = proof_;
      for (std::size_t k = 0; k < states_.size(); ++k) {
        if (proof_[k]) continue;
        for (const Step& step : steps_[k]) {
          bool ready = std::all_of(step.premises.begin(), step.premises.end(),
                                   [&](std::size_t q) { return proof_[q].has_value(); });
          if (ready) {
            next[k] = step;
            changed = true;
            break;
          }
        }
      }
      proof_ = std::move(next);
    }
    if (!proof_[0]) return std::nullopt;
    return build(0);
  }

 private:
  std::size_t intern(const MixedSequent& s) {
    auto [it, fresh] = index_.emplace(s, states_.size());
    if (fresh) {
      states_.push_back(s);
      steps_.emplace_back();
    }
    return it->second;
  }

  void add(std::size_t k, ScRule rule, std::vector<MixedSequent> premises) {
    Step step{rule, {}};
    for (auto& p : premises) {
      if (p == states_[k]) return;
      step.premises.push_back(intern(p));
    }
    steps_[k].push_back(std::move(step));
  }

  void expand(std::size_t k) {
    const MixedSequent s = states_[k];
    const Formula f = s.focus;
    auto with_left = [&](Formula a) {
      MixedSequent t = s;
      t.left.insert(a);
      return t;
    };
    auto with_right = [&](Formula a) {
      MixedSequent t = s;
      t.right.insert(a);
      return t;
    };
    auto with_focus = [&](Formula a) {
      MixedSequent t = s;
      t.focus = a;
      return t;
    };

    if (s.left.contains(f)) {
      steps_[k].push_back(Step{ScRule::Ax, {}});
      return;
    }
    switch (f.kind()) {
      case Kind::And:
        add(k, ScRule::AndR, {with_focus(f.lhs()), with_focus(f.rhs())});
        break;
      case Kind::Or:
        add(k, ScRule::OrR1, {with_focus(f.lhs())});
        add(k, ScRule::OrR2, {with_focus(f.rhs())});
        break;
      case Kind::Imp: {
        MixedSequent t = with_left(f.lhs());
        t.focus = f.rhs();
        add(k, ScRule::ImpR, {t});
        break;
      }
      default:
        break;
    }
    for (Formula p : s.left) {
      switch (p.kind()) {
        case Kind::And:
          add(k, ScRule::AndL1, {with_left(p.lhs())});
          add(k, ScRule::AndL2, {with_left(p.rhs())});
          break;
        case Kind::Or:
          add(k, ScRule::OrL, {with_left(p.lhs()), with_left(p.rhs())});
          break;
        case Kind::Imp: {
          add(k, ScRule::ImpL, {with_focus(p.lhs()), with_left(p.rhs())});
          break;
        }
        default:
          break;
      }
    }
    add(k, ScRule::Sr, {with_right(Formula::bottom())});
    if (is_classical(f)) add(k, ScRule::Sl, {with_right(f)});
    if (!f.is_bottom() && is_intuitionistic(f)) add(k, ScRule::Wr, {with_focus(Formula::bottom())});
    if (is_classical(f)) {
      for (Formula a : s.right) {
        MixedSequent t = with_right(f);
        t.focus = a;
        add(k, ScRule::E, {t});
      }
    }
  }

  ScDerivation build(std::size_t k) const {
    const MixedSequent& s = states_[k];
    const Step& step = *proof_[k];
    if (step.rule == ScRule::Ax) return axiom(s);
    ScDerivation d{step.rule, s, {}};
    for (std::size_t q : step.premises) d.premises.push_back(build(q));
    return d;
  }

  /// A |-' A ; followed by right and then left weakenings up to s.
  static ScDerivation axiom(const MixedSequent& s) {
    ScDerivation d{ScRule::Ax, MixedSequent{{s.focus}, s.focus, {}}, {}};
    for (Formula r : s.right) {
      MixedSequent c = d.conclusion;
      c.right.insert(r);
      d = ScDerivation{ScRule::WrPrime, c, {std::move(d)}};
    }
    for (Formula l : s.left) {
      if (l == s.focus) continue;
      MixedSequent c = d.conclusion;
      c.left.insert(l);
      d = ScDerivation{ScRule::Wl, c, {std::move(d)}};
    }
    return d;
  }

  std::vector<MixedSequent> states_;
  std::map<MixedSequent, std::size_t> index_;
  std::vector<std::vector<Step>> steps_;
  std::vector<std::optional<Step>> proof_;
};

}  // namespace

std::optional<ScDerivation> cutfree_search(const MixedSequent& goal) {
  if (!goal.well_formed())
    throw DerivationError(K::IllFormedSequent, "root", "goal has a non-classical formula on the right");
  auto found = CutFreeSearch(goal).run();
  if (found) check_sc(*found, false);
  return found;
}

}  // namespace pml
