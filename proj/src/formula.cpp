#include "pml/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <ostream>
#include <unordered_set>

#include "pml/error.hpp"

namespace pml {

namespace detail {

enum : std::uint8_t { kHasM = 1, kHasI = 2, kHasC = 4, kHasOrdinary = 8 };

struct Node {
  Kind kind;
  std::optional<Sort> sort;
  std::string name;
  const Node* lhs;
  const Node* rhs;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
  std::uint8_t flags;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodeHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};

struct NodeEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->kind == b->kind && a->sort == b->sort && a->lhs == b->lhs && a->rhs == b->rhs && a->name == b->name;
  }
};

struct InternTable {
  std::mutex mutex;
  std::deque<Node> nodes;
  std::unordered_set<const Node*, NodeHash, NodeEq> index;
};

InternTable& table() {
  static InternTable* t = new InternTable();
  return *t;
}

}  // namespace
}  // namespace detail

using detail::Node;

char sort_char(Sort s) {
  switch (s) {
    case Sort::m:
      return 'm';
    case Sort::i:
      return 'i';
    case Sort::c:
      return 'c';
  }
  return '?';
}

std::optional<Sort> sort_from_char(char ch) {
  switch (ch) {
    case 'm':
      return Sort::m;
    case 'i':
      return Sort::i;
    case 'c':
      return Sort::c;
    default:
      return std::nullopt;
  }
}

Formula Formula::intern(Kind kind, std::string_view name, std::optional<Sort> sort, const Node* lhs,
                        const Node* rhs) {
  Node probe{kind, sort, std::string(name), lhs, rhs, 0, 1, 0, 0};
  std::size_t h = static_cast<std::size_t>(kind) * 0x100000001b3ULL;
  h = detail::mix(h, std::hash<std::string>{}(probe.name));
  h = detail::mix(h, sort ? static_cast<std::size_t>(*sort) + 1 : 0);
  if (lhs) {
    h = detail::mix(h, lhs->hash);
    h = detail::mix(h, rhs->hash);
    probe.size = 1 + lhs->size + rhs->size;
    probe.depth = 1 + std::max(lhs->depth, rhs->depth);
    probe.flags = lhs->flags | rhs->flags;
  } else if (kind == Kind::Var) {
    probe.flags = sort ? static_cast<std::uint8_t>(1u << static_cast<unsigned>(*sort)) : static_cast<std::uint8_t>(detail::kHasOrdinary);
  }
  probe.hash = h;

  auto& t = detail::table();
  std::lock_guard lock(t.mutex);
  if (auto it = t.index.find(&probe); it != t.index.end()) return Formula(*it);
  t.nodes.push_back(std::move(probe));
  const Node* node = &t.nodes.back();
  t.index.insert(node);
  return Formula(node);
}

Formula::Formula() : node_(bottom().node_) {}

Formula Formula::bottom() {
  static const Formula b = intern(Kind::Bottom, "", std::nullopt, nullptr, nullptr);
  return b;
}

namespace {

bool valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char ch : name)
    if (!std::isalnum(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Formula Formula::var(std::string_view name, Sort sort) {
  if (!valid_identifier(name)) throw FormatError("invalid variable name '" + std::string(name) + "'");
  return intern(Kind::Var, name, sort, nullptr, nullptr);
}

Formula Formula::ordinary(std::string_view name) {
  if (!valid_identifier(name) || name == "bot")
    throw FormatError("invalid variable name '" + std::string(name) + "'");
  return intern(Kind::Var, name, std::nullopt, nullptr, nullptr);
}

Formula Formula::conj(Formula a, Formula b) { return intern(Kind::And, "", std::nullopt, a.node_, b.node_); }
Formula Formula::disj(Formula a, Formula b) { return intern(Kind::Or, "", std::nullopt, a.node_, b.node_); }
Formula Formula::imp(Formula a, Formula b) { return intern(Kind::Imp, "", std::nullopt, a.node_, b.node_); }

Kind Formula::kind() const { return node_->kind; }
bool Formula::is_negation() const { return node_->kind == Kind::Imp && node_->rhs->kind == Kind::Bottom; }
const std::string& Formula::name() const { return node_->name; }
std::optional<Sort> Formula::sort() const { return node_->sort; }
Formula Formula::lhs() const { return Formula(node_->lhs); }
Formula Formula::rhs() const { return Formula(node_->rhs); }
bool Formula::has_sort(Sort s) const { return node_->flags & (1u << static_cast<unsigned>(s)); }
bool Formula::has_ordinary_vars() const { return node_->flags & detail::kHasOrdinary; }
bool Formula::has_sorted_vars() const {
  return node_->flags & (detail::kHasM | detail::kHasI | detail::kHasC);
}
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Node* x = a.node_;
  const Node* y = b.node_;
  if (auto c = x->kind <=> y->kind; c != 0) return c;
  switch (x->kind) {
    case Kind::Bottom:
      return std::strong_ordering::equal;
    case Kind::Var:
      if (auto c = x->name <=> y->name; c != 0) return c;
      return x->sort <=> y->sort;
    default:
      if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
      return a.rhs() <=> b.rhs();
  }
}

OrdinaryFormula::OrdinaryFormula(Formula f) : f_(f) {
  if (f.has_sorted_vars()) throw SortViolation("'" + to_string(f) + "' is not an ordinary formula");
}

namespace {

template <typename Fn>
void for_each_var(Formula a, Fn&& fn) {
  if (a.is_var()) {
    fn(a);
  } else if (a.is_binary()) {
    for_each_var(a.lhs(), fn);
    for_each_var(a.rhs(), fn);
  }
}

}  // namespace

FormulaSet vars(Formula a) {
  FormulaSet out;
  for_each_var(a, [&](Formula v) {
    if (v.sort()) out.insert(v);
  });
  return out;
}

std::set<std::string> ordinary_vars(Formula a) {
  std::set<std::string> out;
  for_each_var(a, [&](Formula v) {
    if (!v.sort()) out.insert(v.name());
  });
  return out;
}

bool is_classical(Formula a) {
  return !a.has_sort(Sort::m) && !a.has_sort(Sort::i) && !a.has_ordinary_vars();
}

bool is_intuitionistic(Formula a) { return !a.has_sort(Sort::m) && !a.has_ordinary_vars(); }

bool is_minimal(Formula a) { return !a.has_sort(Sort::i) && !a.has_sort(Sort::c) && !a.has_ordinary_vars(); }

namespace {

Formula rebuild(Formula a, Formula l, Formula r) {
  switch (a.kind()) {
    case Kind::And:
      return Formula::conj(l, r);
    case Kind::Or:
      return Formula::disj(l, r);
    default:
      return Formula::imp(l, r);
  }
}

Formula replace(Formula a, Formula f, Formula x) {
  if (a == x) return f;
  if (a.is_atom()) return a;
  return rebuild(a, replace(a.lhs(), f, x), replace(a.rhs(), f, x));
}

}  // namespace

Formula substitute(Formula a, Formula f, Formula x) {
  if (!x.is_var() || !x.sort()) throw SortViolation("substitution target must be a sorted variable");
  if (*x.sort() == Sort::i && !is_intuitionistic(f))
    throw SortViolation("cannot substitute non-intuitionistic '" + to_string(f) + "' for " + to_string(x));
  if (*x.sort() == Sort::c && !is_classical(f))
    throw SortViolation("cannot substitute non-classical '" + to_string(f) + "' for " + to_string(x));
  if (*x.sort() == Sort::m && f.has_ordinary_vars())
    throw SortViolation("cannot substitute ordinary formula '" + to_string(f) + "' into a sorted formula");
  return replace(a, f, x);
}

void collect_subformulas(Formula a, std::vector<Formula>& out, std::unordered_set<Formula>& seen) {
  if (seen.contains(a)) return;
  if (a.is_binary()) {
    collect_subformulas(a.lhs(), out, seen);
    collect_subformulas(a.rhs(), out, seen);
  }
  seen.insert(a);
  out.push_back(a);
}

std::vector<Formula> subformulas(Formula a) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  collect_subformulas(a, out, seen);
  return out;
}

// Printing. Precedence: -> 1, | 2, & 3, ~ and atoms 4.

namespace {

int precedence(Formula a) {
  switch (a.kind()) {
    case Kind::Imp:
      return a.is_negation() ? 4 : 1;
    case Kind::Or:
      return 2;
    case Kind::And:
      return 3;
    default:
      return 4;
  }
}

void render(Formula a, std::string& out);

void render_child(Formula child, bool parens, std::string& out) {
  if (parens) out += '(';
  render(child, out);
  if (parens) out += ')';
}

void render(Formula a, std::string& out) {
  switch (a.kind()) {
    case Kind::Bottom:
      out += "bot";
      return;
    case Kind::Var:
      out += a.name();
      if (a.sort()) {
        out += '_';
        out += sort_char(*a.sort());
      }
      return;
    case Kind::Imp:
      if (a.is_negation()) {
        out += '~';
        render_child(a.lhs(), precedence(a.lhs()) < 4, out);
        return;
      }
      render_child(a.lhs(), precedence(a.lhs()) <= 1, out);
      out += " -> ";
      render_child(a.rhs(), precedence(a.rhs()) < 1, out);
      return;
    case Kind::Or:
    case Kind::And: {
      int p = precedence(a);
      render_child(a.lhs(), precedence(a.lhs()) < p, out);
      out += a.kind() == Kind::Or ? " | " : " & ";
      render_child(a.rhs(), precedence(a.rhs()) <= p, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(Formula a) {
  std::string out;
  render(a, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, Formula a) { return os << to_string(a); }

}  // namespace pml
