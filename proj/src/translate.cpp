#include "pml/translate.hpp"

#include "pml/error.hpp"

namespace pml {

FreshMap::FreshMap(const FormulaSet& formulas, Sort source, Sort target) {
  std::set<std::string> taken;
  FormulaSet sources;
  for (Formula f : formulas)
    for (Formula x : vars(f)) {
      taken.insert(x.name());
      if (x.sort() == source) sources.insert(x);
    }
  for (Formula x : sources) {
    std::string name = x.name() + "p";
    while (taken.contains(name)) name += "p";
    taken.insert(name);
    map_.emplace(x, Formula::var(name, target));
  }
}

Formula FreshMap::operator()(Formula x) const {
  auto it = map_.find(x);
  if (it == map_.end()) throw PreconditionViolation("no fresh variable for " + to_string(x));
  return it->second;
}

namespace {

Formula dneg(Formula a) { return Formula::neg(Formula::neg(a)); }

Formula m_rec(Formula a, const FreshMap& fresh) {
  switch (a.kind()) {
    case Kind::Bottom:
      return a;
    case Kind::Var:
      if (a.sort() == Sort::i) return dneg(fresh(a));
      return a;
    case Kind::And:
      return Formula::conj(m_rec(a.lhs(), fresh), m_rec(a.rhs(), fresh));
    case Kind::Or:
      return Formula::disj(m_rec(a.lhs(), fresh), m_rec(a.rhs(), fresh));
    case Kind::Imp:
      return Formula::imp(m_rec(a.lhs(), fresh), m_rec(a.rhs(), fresh));
  }
  return a;
}

Formula i_rec(Formula a, const FreshMap& fresh) {
  switch (a.kind()) {
    case Kind::Bottom:
      return a;
    case Kind::Var:
      if (a.sort() == Sort::c) return dneg(fresh(a));
      return a;
    case Kind::And:
      return Formula::conj(i_rec(a.lhs(), fresh), i_rec(a.rhs(), fresh));
    case Kind::Or:
      return dneg(Formula::disj(i_rec(a.lhs(), fresh), i_rec(a.rhs(), fresh)));
    case Kind::Imp:
      return Formula::imp(i_rec(a.lhs(), fresh), i_rec(a.rhs(), fresh));
  }
  return a;
}

void require_sorted(Formula a) {
  if (a.has_ordinary_vars()) throw SortViolation("translations apply to sorted formulas only");
}

}  // namespace

Formula m_translate(Formula a, const FreshMap& fresh) {
  require_sorted(a);
  if (a.has_sort(Sort::c)) throw ClassicalVariablePresent("'" + to_string(a) + "' contains a classical variable");
  return m_rec(a, fresh);
}

Formula m_translate(Formula a) { return m_translate(a, FreshMap({a}, Sort::i, Sort::m)); }

Formula i_translate(Formula a, const FreshMap& fresh) {
  require_sorted(a);
  return i_rec(a, fresh);
}

Formula i_translate(Formula a) { return i_translate(a, FreshMap({a}, Sort::c, Sort::i)); }

}  // namespace pml
