#include "pml/labels.hpp"

#include <algorithm>

namespace pml {

Label::Label(std::initializer_list<std::pair<std::string, Sort>> entries) {
  for (const auto& [name, s] : entries) set(name, s);
}

Sort Label::operator()(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? Sort::m : it->second;
}

void Label::set(const std::string& name, Sort s) {
  if (s == Sort::m)
    entries_.erase(name);
  else
    entries_[name] = s;
}

bool leq(const Label& a, const Label& b) {
  return std::all_of(a.entries().begin(), a.entries().end(), [&](const auto& e) { return e.second <= b(e.first); });
}

bool less(const Label& a, const Label& b) { return leq(a, b) && a != b; }

Label sup(std::span<const Label> ls) {
  if (ls.empty()) throw PreconditionViolation("sup of an empty list of labels");
  Label out;
  for (const Label& l : ls)
    for (const auto& [name, s] : l.entries()) out.set(name, max_sort(out(name), s));
  return out;
}

Label label_c(const OrdinaryFormula& a) {
  Label l;
  for (const auto& name : ordinary_vars(a.formula())) l.set(name, Sort::c);
  return l;
}

std::string to_string(const Label& l, const std::set<std::string>& names) {
  std::set<std::string> all = names;
  for (const auto& [name, s] : l.entries()) all.insert(name);
  std::string out = "{";
  for (const auto& name : all) {
    if (out.size() > 1) out += ", ";
    out += name + ": " + sort_char(l(name));
  }
  return out + "}";
}

namespace {

Formula relabel(const Label& l, Formula f) {
  switch (f.kind()) {
    case Kind::Bottom:
      return f;
    case Kind::Var:
      return Formula::var(f.name(), l(f.name()));
    case Kind::And:
      return Formula::conj(relabel(l, f.lhs()), relabel(l, f.rhs()));
    case Kind::Or:
      return Formula::disj(relabel(l, f.lhs()), relabel(l, f.rhs()));
    case Kind::Imp:
      return Formula::imp(relabel(l, f.lhs()), relabel(l, f.rhs()));
  }
  return f;
}

NdDerivation relabel_tree(const Label& l, const NdDerivation& d) {
  NdDerivation out;
  out.rule = d.rule;
  out.conclusion.goal = relabel(l, d.conclusion.goal);
  for (Formula h : d.conclusion.hyps) out.conclusion.hyps.insert(relabel(l, h));
  for (const auto& p : d.premises) out.premises.push_back(relabel_tree(l, p));
  return out;
}

Label label_of(const NdDerivation& d) {
  std::vector<Label> below;
  for (const auto& p : d.premises) below.push_back(label_of(p));
  Label l = below.empty() ? Label{} : sup(below);
  if (d.rule == NdRule::BotI) {
    for (const auto& name : ordinary_vars(d.conclusion.goal))
      if (l(name) != Sort::c) l.set(name, Sort::i);
  } else if (d.rule == NdRule::BotC) {
    for (const auto& name : ordinary_vars(d.conclusion.goal)) l.set(name, Sort::c);
  }
  return l;
}

std::vector<Label> all_labels(const std::set<std::string>& names) {
  std::vector<Label> out{Label{}};
  for (const auto& name : names) {
    std::vector<Label> next;
    for (const Label& l : out)
      for (Sort s : {Sort::m, Sort::i, Sort::c}) {
        Label x = l;
        x.set(name, s);
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

int rank(const Label& l) {
  int r = 0;
  for (const auto& [name, s] : l.entries()) r += static_cast<int>(s);
  return r;
}

}  // namespace

Formula apply_label(const Label& l, const OrdinaryFormula& a) { return relabel(l, a.formula()); }

NdDerivation apply_label(const Label& l, const OrdinaryDerivation& d) { return relabel_tree(l, d.tree()); }

bool label_order(const Label& a, const Label& b, const std::set<std::string>& names) {
  for (const auto& name : names)
    if (a(name) != b(name)) return a(name) < b(name);
  return false;
}

std::vector<Label> minimal_labels(const OrdinaryFormula& a, const DecideConfig& cfg) {
  if (!classical_oracle(a)) throw NotClassicallyValid("'" + to_string(a.formula()) + "' is not a classical tautology");
  const std::set<std::string> names = ordinary_vars(a.formula());
  std::vector<Label> candidates = all_labels(names);
  // Raising a label is a substitution X_m := X_i or X_i := X_c, which keeps
  // derivability, so a label above a derivable one is derivable. Visiting
  // labels by increasing rank, a label not above an earlier minimum is
  // minimal exactly when it is derivable.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Label& x, const Label& y) { return rank(x) < rank(y); });
  std::vector<Label> minima;
  for (const Label& l : candidates) {
    if (std::any_of(minima.begin(), minima.end(), [&](const Label& m) { return leq(m, l); })) continue;
    Verdict v = decide({}, apply_label(l, a), RuleSet::PML, cfg);
    if (auto* u = std::get_if<Unknown>(&v))
      throw Error("cannot settle label " + to_string(l, names) + ": " + u->reason);
    if (std::holds_alternative<Derivable>(v)) minima.push_back(l);
  }
  std::sort(minima.begin(), minima.end(), [&](const Label& x, const Label& y) { return label_order(x, y, names); });
  return minima;
}

Label derivation_label(const OrdinaryDerivation& d) { return label_of(d.tree()); }

GoodDerivation good_derivation(const OrdinaryFormula& a, std::size_t depth_limit, const DecideConfig& cfg) {
  std::vector<Label> minima = minimal_labels(a, cfg);
  const Label& l = minima.front();
  auto found = nd_search(SimpleSequent{{}, apply_label(l, a)}, RuleSet::PML, depth_limit);
  if (!found)
    return Unknown{"no derivation of " + to_string(apply_label(l, a)) + " with height at most " +
                   std::to_string(depth_limit)};
  return erase_labels(*found);
}

}  // namespace pml
