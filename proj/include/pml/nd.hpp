#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pml/error.hpp"
#include "pml/formula.hpp"

namespace pml {

/// Natural-deduction rules. BotI is ex falso (conclusion must be an
/// intuitionistic formula), BotC is double-negation elimination (conclusion
/// must be classical). In ordinary derivations they are the unrestricted
/// absurdity rules of intuitionistic and classical logic.
enum class NdRule { Ax, W, AndI, AndE1, AndE2, OrI1, OrI2, OrE, ImpI, ImpE, BotI, BotC };

/// PML: every rule. I: no BotC. M: neither absurdity rule. IPrime: no BotI.
/// PMLVee: every rule, but an OrE on a classical disjunction must conclude a
/// classical formula.
enum class RuleSet { PML, I, M, IPrime, PMLVee };

/// Logics over ordinary (unsorted) formulas.
enum class OrdinaryLogic { PLM, PLI, PLC };

const char* to_string(NdRule r);
const char* to_string(RuleSet rs);
NdRule nd_rule_from_string(std::string_view name);
RuleSet rule_set_from_string(std::string_view name);
std::size_t arity(NdRule r);
bool allows(RuleSet rs, NdRule r);

struct SimpleSequent {
  FormulaSet hyps;
  Formula goal;

  friend bool operator==(const SimpleSequent&, const SimpleSequent&) = default;
};

std::string to_string(const SimpleSequent& s);

struct NdDerivation {
  NdRule rule = NdRule::Ax;
  SimpleSequent conclusion;
  std::vector<NdDerivation> premises;

  std::size_t height() const;
  std::size_t node_count() const;
  friend bool operator==(const NdDerivation&, const NdDerivation&) = default;
};

/// Raised by the derivation checkers. `path()` names the offending node as
/// premise indices from the root ("root", "0", "0.2", ...).
class DerivationError : public Error {
 public:
  enum class Kind {
    RuleViolation,
    ForbiddenRule,
    SideConditionViolation,
    CutForbidden,
    IllFormedSequent,
    InvalidDerivation,
  };

  DerivationError(Kind kind, std::string path, const std::string& reason)
      : Error(reason + " (at " + path + ")"), kind_(kind), path_(std::move(path)) {}

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }

 private:
  Kind kind_;
  std::string path_;
};

/// Checks every inference of a derivation over sorted formulas and returns
/// the root conclusion. Hypotheses are sets: two- and three-premise rules take
/// the union of the premise contexts, and a discharged formula may or may not
/// remain in the context. The two premises of ImpE may come in either
/// order. Throws DerivationError.
SimpleSequent check_nd(const NdDerivation& d, RuleSet rs);

/// A derivation over ordinary formulas, valid in classical logic.
class OrdinaryDerivation {
 public:
  /// Throws DerivationError(InvalidDerivation) unless `tree` is a valid PLC
  /// derivation over ordinary formulas.
  explicit OrdinaryDerivation(NdDerivation tree);

  const NdDerivation& tree() const { return tree_; }
  const SimpleSequent& conclusion() const { return tree_.conclusion; }

 private:
  NdDerivation tree_;
};

/// Same as check_nd for ordinary derivations; the absurdity rules carry no
/// side conditions, only the logic's rule restrictions.
SimpleSequent check_ordinary(const NdDerivation& d, OrdinaryLogic logic);

/// Drops every sort annotation (X_c becomes X). The input must pass check_nd
/// under PML; the erased tree is re-checked as a PLC derivation.
OrdinaryDerivation erase_labels(const NdDerivation& d);

/// Bounded iterative-deepening proof search. Goals range over the subformulas
/// of the sequent, the excluded-middle instances X | ~X of its classical
/// variables (when BotC is available) and their subformulas, Bottom, the
/// negations of all of those, and the double negations of the classical ones.
/// Returns a derivation of height at most `depth_limit` accepted by check_nd,
/// or nullopt when the bounded space is exhausted (which says nothing about
/// derivability).
std::optional<NdDerivation> nd_search(const SimpleSequent& s, RuleSet rs, std::size_t depth_limit);

}  // namespace pml
