#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

namespace pml {

/// Variable sorts, totally ordered m < i < c.
enum class Sort : std::uint8_t { m = 0, i = 1, c = 2 };

char sort_char(Sort s);
std::optional<Sort> sort_from_char(char ch);

inline Sort max_sort(Sort a, Sort b) { return a < b ? b : a; }

enum class Kind : std::uint8_t { Var, Bottom, And, Or, Imp };

namespace detail {
struct Node;
}

/// Immutable, hash-consed propositional formula. Two formulas are equal iff
/// they are structurally equal, which is a pointer comparison. Copies are
/// cheap; nodes live for the duration of the process.
///
/// Atoms are either sorted variables (X_m, X_i, X_c), unsorted "ordinary"
/// variables (X), or Bottom. Negation is Imp(a, Bottom).
class Formula {
 public:
  Formula();  // Bottom

  static Formula bottom();
  static Formula var(std::string_view name, Sort sort);
  static Formula ordinary(std::string_view name);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula neg(Formula a) { return imp(a, bottom()); }

  Kind kind() const;
  bool is_atom() const { return kind() == Kind::Var || kind() == Kind::Bottom; }
  bool is_bottom() const { return kind() == Kind::Bottom; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_binary() const { return !is_atom(); }
  /// Imp(a, Bottom).
  bool is_negation() const;

  /// Variable name; empty for Bottom and compound formulas.
  const std::string& name() const;
  /// Sort of a sorted variable; nullopt for ordinary variables and non-variables.
  std::optional<Sort> sort() const;

  Formula lhs() const;
  Formula rhs() const;

  /// Whether a variable of the given kind occurs anywhere in the formula.
  bool has_sort(Sort s) const;
  bool has_ordinary_vars() const;
  bool has_sorted_vars() const;

  std::size_t hash() const;
  std::size_t size() const;
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.node_ == b.node_; }
  /// Structural total order (kind, then name/sort, then children).
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(const detail::Node* node) : node_(node) {}
  static Formula intern(Kind kind, std::string_view name, std::optional<Sort> sort, const detail::Node* lhs,
                        const detail::Node* rhs);

  const detail::Node* node_;
};

}  // namespace pml

template <>
struct std::hash<pml::Formula> {
  std::size_t operator()(const pml::Formula& f) const noexcept { return f.hash(); }
};

namespace pml {

using FormulaSet = std::set<Formula>;

/// A formula known to contain no sorted variables.
class OrdinaryFormula {
 public:
  /// Throws SortViolation if `f` contains a sorted variable.
  explicit OrdinaryFormula(Formula f);

  const Formula& formula() const { return f_; }
  friend bool operator==(const OrdinaryFormula&, const OrdinaryFormula&) = default;
  friend auto operator<=>(const OrdinaryFormula& a, const OrdinaryFormula& b) { return a.f_ <=> b.f_; }

 private:
  Formula f_;
};

// Classification. Bottom counts as minimal, intuitionistic and classical.

/// Sorted variables of `a` (Bottom contributes nothing).
FormulaSet vars(Formula a);
/// Names of ordinary variables of `a`.
std::set<std::string> ordinary_vars(Formula a);
bool is_classical(Formula a);
bool is_intuitionistic(Formula a);
bool is_minimal(Formula a);

/// Replaces every occurrence of the sorted variable `x` by `f`. Throws
/// SortViolation if `x` is intuitionistic and `f` is not an intuitionistic
/// formula, or if `x` is classical and `f` is not classical.
Formula substitute(Formula a, Formula f, Formula x);

/// All distinct subformulas, children before parents.
std::vector<Formula> subformulas(Formula a);
void collect_subformulas(Formula a, std::vector<Formula>& out, std::unordered_set<Formula>& seen);

/// Renders with minimal parentheses: `~` binds tightest, then `&`, `|`, `->`;
/// `->` is right-associative, `&` and `|` left-associative.
std::string to_string(Formula a);
std::ostream& operator<<(std::ostream& os, Formula a);

/// Either kind of parse result. A formula without variables parses as a
/// sorted Formula.
using ParsedFormula = std::variant<Formula, OrdinaryFormula>;

ParsedFormula parse(std::string_view text);
/// Accepts formulas whose atoms are sorted variables or `bot`.
Formula parse_sorted(std::string_view text);
/// Accepts formulas whose atoms are bare identifiers or `bot`.
OrdinaryFormula parse_ordinary(std::string_view text);
/// Parses a single atom ("X_c", "bot", "X").
Formula parse_atom(std::string_view text);

}  // namespace pml
