#include "pml/decide.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <unordered_map>

namespace pml {

const char* to_string(Engine e) {
  switch (e) {
    case Engine::Reduction:
      return "reduction";
    case Engine::BruteForce:
      return "brute-force";
    case Engine::Both:
      return "both";
  }
  return "?";
}

Engine engine_from_string(std::string_view name) {
  if (name == "reduction") return Engine::Reduction;
  if (name == "brute-force" || name == "bruteforce") return Engine::BruteForce;
  if (name == "both") return Engine::Both;
  throw FormatError("unknown engine '" + std::string(name) + "' (expected reduction, brute-force or both)");
}

NotDerivable::NotDerivable(MixedModel model, std::size_t world, const FormulaSet& gamma, Formula goal)
    : model_(std::move(model)), world_(world) {
  if (world_ >= model_.size()) throw Error("countermodel world index out of range");
  for (Formula h : gamma)
    if (!valid_in(model_, h)) throw Error("countermodel does not validate hypothesis " + to_string(h));
  if (forces(model_, world_, goal))
    throw Error("countermodel forces the goal " + to_string(goal) + " at " + model_.worlds()[world_]);
}

const char* verdict_name(const Verdict& v) {
  switch (v.index()) {
    case 0:
      return "Derivable";
    case 1:
      return "NotDerivable";
    default:
      return "Unknown";
  }
}

namespace {

FormulaSet input_vars(const FormulaSet& gamma, Formula a) {
  FormulaSet out = vars(a);
  for (Formula h : gamma) {
    FormulaSet v = vars(h);
    out.insert(v.begin(), v.end());
  }
  return out;
}

void require_sorted(const FormulaSet& gamma, Formula a) {
  auto ordinary = [](Formula f) { return f.has_ordinary_vars(); };
  if (ordinary(a) || std::any_of(gamma.begin(), gamma.end(), ordinary))
    throw SortViolation("expected sorted formulas; apply a label to ordinary formulas first");
}

}  // namespace

SimpleSequent reduce_to_core(const FormulaSet& gamma, Formula a, RuleSet rs) {
  require_sorted(gamma, a);
  if (rs == RuleSet::PMLVee) throw UnsupportedRuleSet("rule set pmlvee cannot be decided");
  FormulaSet xs = input_vars(gamma, a);
  for (Formula x : xs) {
    Sort s = *x.sort();
    bool bad = (rs == RuleSet::I && s == Sort::c) || (rs == RuleSet::M && s != Sort::m) ||
               (rs == RuleSet::IPrime && s == Sort::i);
    if (bad)
      throw PreconditionViolation(std::string("rule set ") + to_string(rs) + " cannot decide sequents containing " +
                                  to_string(x));
  }
  SimpleSequent out{gamma, a};
  if (rs == RuleSet::M) return out;
  for (Formula x : xs) {
    Sort s = *x.sort();
    if (s == Sort::m) continue;
    if (rs == RuleSet::I && s != Sort::i) continue;
    out.hyps.insert(Formula::imp(Formula::bottom(), x));
    if (s == Sort::c && rs != RuleSet::I) out.hyps.insert(Formula::disj(x, Formula::neg(x)));
  }
  return out;
}

// --- core decider ---------------------------------------------------------
//
// Multi-succedent sequent search. A state is a pair (G, D) of closure subsets
// read as G |- D. Every rule except ->R is invertible, so states are
// saturated first; a saturated open state becomes a world whose successors
// are the ->R attempts. G strictly grows across ->R, which bounds the depth.

namespace {

struct CoreWorld {
  Bits atoms;
  std::vector<std::shared_ptr<const CoreWorld>> children;
};

using WorldPtr = std::shared_ptr<const CoreWorld>;

struct StateKey {
  Bits g, d;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateHash {
  std::size_t operator()(const StateKey& k) const { return k.g.hash() * 1000003u ^ k.d.hash(); }
};

class CoreSearch {
 public:
  explicit CoreSearch(const SimpleSequent& s) {
    std::unordered_set<Formula> seen;
    for (Formula h : s.hyps) collect_subformulas(h, closure_, seen);
    collect_subformulas(s.goal, closure_, seen);
    std::unordered_map<Formula, std::size_t> index;
    for (std::size_t k = 0; k < closure_.size(); ++k) index.emplace(closure_[k], k);
    kind_.resize(closure_.size());
    lhs_.resize(closure_.size());
    rhs_.resize(closure_.size());
    for (std::size_t k = 0; k < closure_.size(); ++k) {
      Formula f = closure_[k];
      kind_[k] = f.kind();
      if (f.is_binary()) {
        lhs_[k] = index.at(f.lhs());
        rhs_[k] = index.at(f.rhs());
      }
    }
    g0_ = Bits(closure_.size());
    for (Formula h : s.hyps) g0_.set(index.at(h));
    d0_ = Bits(closure_.size()).with(index.at(s.goal));
  }

  /// nullptr when G |- D is derivable.
  WorldPtr run() { return search(g0_, d0_); }

  const std::vector<Formula>& closure() const { return closure_; }

 private:
  WorldPtr search(Bits g, Bits d) {
    StateKey key{g, d};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    WorldPtr result = expand(std::move(g), std::move(d));
    memo_.emplace(std::move(key), result);
    return result;
  }

  WorldPtr expand(Bits g, Bits d) {
    const std::size_t n = closure_.size();
    for (bool changed = true; changed;) {
      changed = false;
      if (g.intersects(d)) return nullptr;
      for (std::size_t k = 0; k < n; ++k) {
        if (g.test(k) && kind_[k] == Kind::And) {
          if (!g.test(lhs_[k]) || !g.test(rhs_[k])) {
            g.set(lhs_[k]);
            g.set(rhs_[k]);
            changed = true;
          }
        }
        if (d.test(k) && kind_[k] == Kind::Or) {
          if (!d.test(lhs_[k]) || !d.test(rhs_[k])) {
            d.set(lhs_[k]);
            d.set(rhs_[k]);
            changed = true;
          }
        }
        if (d.test(k) && kind_[k] == Kind::Imp && g.test(lhs_[k]) && !d.test(rhs_[k])) {
          d.set(rhs_[k]);
          changed = true;
        }
      }
    }

    for (std::size_t k = 0; k < n; ++k) {
      if (g.test(k)) {
        if (kind_[k] == Kind::Or && !g.test(lhs_[k]) && !g.test(rhs_[k])) {
          if (WorldPtr w = search(g.with(lhs_[k]), d)) return w;
          return search(g.with(rhs_[k]), d);
        }
        if (kind_[k] == Kind::Imp && !d.test(lhs_[k]) && !g.test(rhs_[k])) {
          if (WorldPtr w = search(g, d.with(lhs_[k]))) return w;
          return search(g.with(rhs_[k]), d);
        }
      }
      if (d.test(k) && kind_[k] == Kind::And && !d.test(lhs_[k]) && !d.test(rhs_[k])) {
        if (WorldPtr w = search(g, d.with(lhs_[k]))) return w;
        return search(g, d.with(rhs_[k]));
      }
    }

    auto world = std::make_shared<CoreWorld>();
    world->atoms = Bits(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (g.test(k) && (kind_[k] == Kind::Var || kind_[k] == Kind::Bottom)) world->atoms.set(k);
      if (d.test(k) && kind_[k] == Kind::Imp && !g.test(lhs_[k])) {
        WorldPtr child = search(g.with(lhs_[k]), Bits(n).with(rhs_[k]));
        if (!child) return nullptr;
        world->children.push_back(std::move(child));
      }
    }
    return world;
  }

  std::vector<Formula> closure_;
  std::vector<Kind> kind_;
  std::vector<std::size_t> lhs_, rhs_;
  Bits g0_, d0_;
  std::unordered_map<StateKey, WorldPtr, StateHash> memo_;
};

RootedModel flatten(const CoreWorld* root, const std::vector<Formula>& closure) {
  std::vector<const CoreWorld*> order{root};
  std::unordered_map<const CoreWorld*, std::size_t> index{{root, 0}};
  for (std::size_t k = 0; k < order.size(); ++k)
    for (const auto& c : order[k]->children)
      if (index.emplace(c.get(), order.size()).second) order.push_back(c.get());

  RootedModel m;
  const std::size_t n = order.size();
  m.up.assign(n, Bits(n));
  m.atoms.resize(n);
  // Children are always discovered after their parents, so a reverse sweep
  // sees every successor's cone completed.
  for (std::size_t k = n; k-- > 0;) {
    m.up[k].set(k);
    for (const auto& c : order[k]->children) m.up[k] |= m.up[index.at(c.get())];
    order[k]->atoms.for_each([&](std::size_t a) { m.atoms[k].insert(closure[a]); });
  }
  return m;
}

Bits core_eval(const RootedModel& m, Formula a, std::unordered_map<Formula, Bits>& memo) {
  if (auto it = memo.find(a); it != memo.end()) return it->second;
  const std::size_t n = m.size();
  Bits out(n);
  switch (a.kind()) {
    case Kind::Var:
    case Kind::Bottom:
      for (std::size_t w = 0; w < n; ++w)
        if (m.atoms[w].contains(a)) out.set(w);
      break;
    case Kind::And:
      out = core_eval(m, a.lhs(), memo) & core_eval(m, a.rhs(), memo);
      break;
    case Kind::Or:
      out = core_eval(m, a.lhs(), memo) | core_eval(m, a.rhs(), memo);
      break;
    case Kind::Imp: {
      Bits bad = core_eval(m, a.lhs(), memo) & ~core_eval(m, a.rhs(), memo);
      for (std::size_t w = 0; w < n; ++w)
        if (!m.up[w].intersects(bad)) out.set(w);
      break;
    }
  }
  memo.emplace(a, out);
  return out;
}

}  // namespace

bool core_forces(const RootedModel& m, std::size_t w, Formula a) {
  std::unordered_map<Formula, Bits> memo;
  return core_eval(m, a, memo).test(w);
}

CoreResult core_decide(const SimpleSequent& s) {
  CoreSearch search(s);
  WorldPtr root = search.run();
  if (!root) return Derivable{};
  return flatten(root.get(), search.closure());
}

// --- brute force ------------------------------------------------------------

ModelClass model_class(RuleSet rs) {
  switch (rs) {
    case RuleSet::I:
      return ModelClass::IntuitionisticMixed;
    case RuleSet::M:
      return ModelClass::MinimalMixed;
    default:
      return ModelClass::Mixed;
  }
}

namespace {

/// Formulas compiled to a DAG evaluated with one bitmask per node.
struct Compiled {
  struct Node {
    Kind kind;
    std::size_t a, b;  // atom index for atoms, children otherwise
  };
  std::vector<Node> nodes;
  std::vector<std::size_t> hyps;
  std::size_t goal = 0;

  Compiled(const FormulaSet& gamma, Formula goal_formula, const std::vector<Formula>& atoms) {
    std::unordered_map<Formula, std::size_t> index;
    auto add = [&](auto&& self, Formula f) -> std::size_t {
      if (auto it = index.find(f); it != index.end()) return it->second;
      Node node{f.kind(), 0, 0};
      if (f.is_atom()) {
        node.a = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), f) - atoms.begin());
      } else {
        node.a = self(self, f.lhs());
        node.b = self(self, f.rhs());
      }
      nodes.push_back(node);
      index.emplace(f, nodes.size() - 1);
      return nodes.size() - 1;
    };
    for (Formula h : gamma) hyps.push_back(add(add, h));
    goal = add(add, goal_formula);
  }

  /// True when world 0 forces every hypothesis but not the goal.
  bool refutes(const Poset& p, std::span<const std::uint64_t> masks, std::vector<std::uint64_t>& val) const {
    val.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Node& nd = nodes[k];
      switch (nd.kind) {
        case Kind::Var:
        case Kind::Bottom:
          val[k] = masks[nd.a];
          break;
        case Kind::And:
          val[k] = val[nd.a] & val[nd.b];
          break;
        case Kind::Or:
          val[k] = val[nd.a] | val[nd.b];
          break;
        case Kind::Imp: {
          std::uint64_t bad = val[nd.a] & ~val[nd.b];
          std::uint64_t out = 0;
          for (std::size_t w = 0; w < p.n; ++w)
            if (!(p.up[w] & bad)) out |= std::uint64_t{1} << w;
          val[k] = out;
          break;
        }
      }
    }
    if (val[goal] & 1u) return false;
    for (std::size_t h : hyps)
      if (!(val[h] & 1u)) return false;
    return true;
  }
};

constexpr std::size_t kMaxBruteForceSize = 8;

}  // namespace

std::optional<NotDerivable> brute_force(const FormulaSet& gamma, Formula a, ModelClass cls, std::size_t max_size) {
  require_sorted(gamma, a);
  if (max_size > kMaxBruteForceSize)
    throw PreconditionViolation("brute force supports at most " + std::to_string(kMaxBruteForceSize) + " worlds");
  std::vector<Formula> atoms{Formula::bottom()};
  for (Formula x : input_vars(gamma, a)) {
    if (!atom_allowed(x, cls))
      throw PreconditionViolation(to_string(x) + " is not allowed in " + std::string(to_string(cls)) + " models");
    atoms.push_back(x);
  }
  Compiled compiled(gamma, a, atoms);
  std::vector<std::uint64_t> val;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const Poset& p : rooted_posets(n)) {
      std::vector<std::uint64_t> found;
      for_each_forcing(p, atoms, [&](std::span<const std::uint64_t> masks) {
        if (!compiled.refutes(p, masks, val)) return true;
        found.assign(masks.begin(), masks.end());
        return false;
      });
      if (!found.empty()) return NotDerivable(model_from_masks(p, atoms, found), 0, gamma, a);
    }
  }
  return std::nullopt;
}

bool classical_oracle(const OrdinaryFormula& a) {
  std::set<std::string> names = ordinary_vars(a.formula());
  if (names.size() > 24) throw PreconditionViolation("too many variables for a truth table");
  std::map<std::string, std::size_t> bit;
  for (const auto& n : names) bit.emplace(n, bit.size());
  auto eval = [&](auto&& self, Formula f, std::uint32_t v) -> bool {
    switch (f.kind()) {
      case Kind::Bottom:
        return false;
      case Kind::Var:
        return (v >> bit.at(f.name())) & 1u;
      case Kind::And:
        return self(self, f.lhs(), v) && self(self, f.rhs(), v);
      case Kind::Or:
        return self(self, f.lhs(), v) || self(self, f.rhs(), v);
      case Kind::Imp:
        return !self(self, f.lhs(), v) || self(self, f.rhs(), v);
    }
    return false;
  };
  for (std::uint32_t v = 0; v < (std::uint32_t{1} << names.size()); ++v)
    if (!eval(eval, a.formula(), v)) return false;
  return true;
}

// --- decide -----------------------------------------------------------------

namespace {

/// Reads a core countermodel as a mixed model over the input signature.
std::optional<NotDerivable> lift(const RootedModel& core, const FormulaSet& gamma, Formula a) {
  RawModel raw;
  for (std::size_t w = 0; w < core.size(); ++w) raw.worlds.push_back("w" + std::to_string(w));
  for (std::size_t w = 0; w < core.size(); ++w)
    core.up[w].for_each([&](std::size_t v) {
      if (v != w) raw.leq.emplace_back(raw.worlds[w], raw.worlds[v]);
    });
  FormulaSet sig = input_vars(gamma, a);
  sig.insert(Formula::bottom());
  raw.signature.assign(sig.begin(), sig.end());
  for (std::size_t w = 0; w < core.size(); ++w)
    for (Formula atom : core.atoms[w])
      if (sig.contains(atom)) raw.forcing.emplace_back(raw.worlds[w], atom);
  try {
    return NotDerivable(MixedModel::validate(raw), 0, gamma, a);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

Verdict decide(const FormulaSet& gamma, Formula a, RuleSet rs, const DecideConfig& cfg) {
  if (cfg.max_model_size == 0) throw PreconditionViolation("max_model_size must be at least 1");
  SimpleSequent core = reduce_to_core(gamma, a, rs);
  const ModelClass cls = model_class(rs);
  const std::string bound = std::to_string(cfg.max_model_size);

  if (cfg.engine == Engine::BruteForce) {
    if (auto cm = brute_force(gamma, a, cls, cfg.max_model_size)) return std::move(*cm);
    return Unknown{"no countermodel with at most " + bound + " worlds"};
  }

  CoreResult result = core_decide(core);
  if (std::holds_alternative<Derivable>(result)) {
    if (cfg.engine == Engine::Reduction) return Derivable{};
    if (auto cm = brute_force(gamma, a, cls, cfg.max_model_size))
      return Unknown{"engines disagree: reduction derives the sequent but brute force found a countermodel with " +
                     std::to_string(cm->model().size()) + " worlds"};
    return Derivable{};
  }

  const RootedModel& core_model = std::get<RootedModel>(result);
  std::optional<NotDerivable> lifted = lift(core_model, gamma, a);
  if (cfg.engine == Engine::Reduction) {
    if (lifted) return std::move(*lifted);
    if (auto cm = brute_force(gamma, a, cls, std::min(cfg.max_model_size, kMaxBruteForceSize))) return std::move(*cm);
    return Unknown{"reduction countermodel failed validation and brute force found none with at most " + bound +
                   " worlds"};
  }

  std::optional<NotDerivable> brute = brute_force(gamma, a, cls, cfg.max_model_size);
  if (!brute)
    return Unknown{"engines disagree: reduction refutes the sequent (countermodel with " +
                   std::to_string(core_model.size()) + " worlds) but brute force found none with at most " + bound +
                   " worlds"};
  if (lifted) return std::move(*lifted);
  return std::move(*brute);
}

}  // namespace pml
