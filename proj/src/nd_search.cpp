#include <algorithm>
#include <memory>
#include <unordered_map>

#include "pml/bits.hpp"
#include "pml/nd.hpp"

namespace pml {

namespace {

struct Proof {
  NdDerivation tree;
  Bits hyps;  // indices into the universe, always a subset of the searched context
  std::size_t height;
};

using ProofPtr = std::shared_ptr<const Proof>;

struct Key {
  Bits gamma;
  std::size_t goal;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return k.gamma.hash() * 31 + k.goal; }
};

struct Entry {
  std::size_t failed_depth = 0;  // no proof of height <= failed_depth exists
  ProofPtr proof;
};

class Searcher {
 public:
  Searcher(const SimpleSequent& s, RuleSet rs) : rs_(rs) {
    std::vector<Formula> base;
    std::unordered_set<Formula> seen;
    for (Formula h : s.hyps) collect_subformulas(h, base, seen);
    collect_subformulas(s.goal, base, seen);
    if (allows(rs, NdRule::BotC)) {
      FormulaSet classical_vars;
      for (Formula f : base)
        if (f.is_var() && f.sort() == Sort::c) classical_vars.insert(f);
      for (Formula x : classical_vars) collect_subformulas(Formula::disj(x, Formula::neg(x)), base, seen);
    }
    std::vector<Formula> universe;
    std::unordered_set<Formula> in_universe;
    auto add = [&](Formula f) { collect_subformulas(f, universe, in_universe); };
    add(Formula::bottom());
    for (Formula f : base) {
      add(f);
      add(Formula::neg(f));
      if (is_classical(f)) add(Formula::neg(Formula::neg(f)));
    }
    universe_ = std::move(universe);
    for (std::size_t k = 0; k < universe_.size(); ++k) index_.emplace(universe_[k], k);
    bottom_ = index_.at(Formula::bottom());

    conj_with_.resize(universe_.size());
    imp_into_.resize(universe_.size());
    for (std::size_t k = 0; k < universe_.size(); ++k) {
      Formula f = universe_[k];
      if (f.kind() == Kind::And) {
        conj_with_[index_.at(f.lhs())].push_back({k, NdRule::AndE1});
        conj_with_[index_.at(f.rhs())].push_back({k, NdRule::AndE2});
      } else if (f.kind() == Kind::Imp) {
        imp_into_[index_.at(f.rhs())].push_back(k);
      } else if (f.kind() == Kind::Or) {
        disjunctions_.push_back(k);
      }
    }
  }

  std::optional<NdDerivation> run(const SimpleSequent& s, std::size_t depth_limit) {
    Bits gamma(universe_.size());
    for (Formula h : s.hyps) gamma.set(index_.at(h));
    std::size_t goal = index_.at(s.goal);
    for (std::size_t d = 1; d <= depth_limit; ++d) {
      ProofPtr p = prove(gamma, goal, d);
      if (!p) continue;
      std::size_t missing = s.hyps.size() - p->hyps.count();
      if (p->height + missing > depth_limit) continue;
      NdDerivation tree = p->tree;
      FormulaSet hyps = tree.conclusion.hyps;
      for (Formula h : s.hyps) {
        if (hyps.contains(h)) continue;
        hyps.insert(h);
        NdDerivation w;
        w.rule = NdRule::W;
        w.conclusion = SimpleSequent{hyps, s.goal};
        w.premises.push_back(std::move(tree));
        tree = std::move(w);
      }
      return tree;
    }
    return std::nullopt;
  }

 private:
  FormulaSet to_set(const Bits& b) const {
    FormulaSet out;
    b.for_each([&](std::size_t k) { out.insert(universe_[k]); });
    return out;
  }

  ProofPtr make(NdRule rule, const Bits& hyps, std::size_t goal, std::vector<ProofPtr> premises) const {
    auto p = std::make_shared<Proof>();
    p->tree.rule = rule;
    p->tree.conclusion = SimpleSequent{to_set(hyps), universe_[goal]};
    p->hyps = hyps;
    p->height = 1;
    for (const auto& q : premises) {
      p->height = std::max(p->height, q->height + 1);
      p->tree.premises.push_back(q->tree);
    }
    return p;
  }

  ProofPtr prove(const Bits& gamma, std::size_t goal, std::size_t d) {
    if (d == 0) return nullptr;
    Key key{gamma, goal};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (it->second.proof && it->second.proof->height <= d) return it->second.proof;
      if (it->second.failed_depth >= d) return nullptr;
    }
    ProofPtr p = attempt(gamma, goal, d);
    Entry& e = memo_[key];
    if (p) {
      if (!e.proof || e.proof->height > p->height) e.proof = p;
    } else {
      e.failed_depth = std::max(e.failed_depth, d);
    }
    return p;
  }

  ProofPtr attempt(const Bits& gamma, std::size_t goal, std::size_t d) {
    Formula g = universe_[goal];
    Bits none(universe_.size());

    if (gamma.test(goal)) return make(NdRule::Ax, none.with(goal), goal, {});
    if (d == 1) return nullptr;
    std::size_t sub = d - 1;

    switch (g.kind()) {
      case Kind::And: {
        ProofPtr a = prove(gamma, index_.at(g.lhs()), sub);
        if (a) {
          if (ProofPtr b = prove(gamma, index_.at(g.rhs()), sub)) return make(NdRule::AndI, a->hyps | b->hyps, goal, {a, b});
        }
        break;
      }
      case Kind::Or:
        if (ProofPtr a = prove(gamma, index_.at(g.lhs()), sub)) return make(NdRule::OrI1, a->hyps, goal, {a});
        if (ProofPtr b = prove(gamma, index_.at(g.rhs()), sub)) return make(NdRule::OrI2, b->hyps, goal, {b});
        break;
      case Kind::Imp: {
        std::size_t ante = index_.at(g.lhs());
        if (ProofPtr a = prove(gamma.with(ante), index_.at(g.rhs()), sub)) {
          Bits h = a->hyps;
          h.reset(ante);
          return make(NdRule::ImpI, h, goal, {a});
        }
        break;
      }
      default:
        break;
    }

    if (allows(rs_, NdRule::BotC) && is_classical(g)) {
      auto it = index_.find(Formula::neg(Formula::neg(g)));
      if (it != index_.end()) {
        if (ProofPtr a = prove(gamma, it->second, sub)) return make(NdRule::BotC, a->hyps, goal, {a});
      }
    }
    if (allows(rs_, NdRule::BotI) && goal != bottom_ && is_intuitionistic(g)) {
      if (ProofPtr a = prove(gamma, bottom_, sub)) return make(NdRule::BotI, a->hyps, goal, {a});
    }

    for (const auto& [conj, rule] : conj_with_[goal]) {
      if (ProofPtr a = prove(gamma, conj, sub)) return make(rule, a->hyps, goal, {a});
    }

    for (std::size_t imp : imp_into_[goal]) {
      std::size_t ante = index_.at(universe_[imp].lhs());
      ProofPtr minor = prove(gamma, ante, sub);
      if (!minor) continue;
      if (ProofPtr major = prove(gamma, imp, sub)) return make(NdRule::ImpE, major->hyps | minor->hyps, goal, {major, minor});
    }

    for (std::size_t dis : disjunctions_) {
      Formula f = universe_[dis];
      std::size_t l = index_.at(f.lhs());
      std::size_t r = index_.at(f.rhs());
      if (gamma.test(l) || gamma.test(r)) continue;
      if (rs_ == RuleSet::PMLVee && is_classical(f) && !is_classical(g)) continue;
      ProofPtr left = prove(gamma.with(l), goal, sub);
      if (!left) continue;
      ProofPtr right = prove(gamma.with(r), goal, sub);
      if (!right) continue;
      ProofPtr major = prove(gamma, dis, sub);
      if (!major) continue;
      Bits h1 = left->hyps;
      h1.reset(l);
      Bits h2 = right->hyps;
      h2.reset(r);
      return make(NdRule::OrE, major->hyps | h1 | h2, goal, {major, left, right});
    }
    return nullptr;
  }

  RuleSet rs_;
  std::vector<Formula> universe_;
  std::unordered_map<Formula, std::size_t> index_;
  std::size_t bottom_ = 0;
  std::vector<std::vector<std::pair<std::size_t, NdRule>>> conj_with_;
  std::vector<std::vector<std::size_t>> imp_into_;
  std::vector<std::size_t> disjunctions_;
  std::unordered_map<Key, Entry, KeyHash> memo_;
};

}  // namespace

std::optional<NdDerivation> nd_search(const SimpleSequent& s, RuleSet rs, std::size_t depth_limit) {
  Searcher searcher(s, rs);
  auto found = searcher.run(s, depth_limit);
  if (found) check_nd(*found, rs);
  return found;
}

}  // namespace pml
