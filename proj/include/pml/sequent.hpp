#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pml/formula.hpp"
#include "pml/nd.hpp"

namespace pml {

/// left |-' focus ; right, where every member of `right` must be classical.
struct MixedSequent {
  FormulaSet left;
  Formula focus;
  FormulaSet right;

  bool well_formed() const;
  friend bool operator==(const MixedSequent&, const MixedSequent&) = default;
  friend auto operator<=>(const MixedSequent&, const MixedSequent&) = default;
};

std::string to_string(const MixedSequent& s);

enum class ScRule {
  Ax,
  Cut,
  Sr,
  Sl,
  Wr,
  Wl,
  WrPrime,
  E,
  AndR,
  AndL1,
  AndL2,
  OrR1,
  OrR2,
  OrL,
  ImpR,
  ImpL,
};

const char* to_string(ScRule r);
ScRule sc_rule_from_string(std::string_view name);
std::size_t arity(ScRule r);

struct ScDerivation {
  ScRule rule = ScRule::Ax;
  MixedSequent conclusion;
  std::vector<ScDerivation> premises;

  std::size_t node_count() const;
  friend bool operator==(const ScDerivation&, const ScDerivation&) = default;
};

/// Checks every node and returns the root conclusion. Contexts are sets:
/// binary rules take unions and a principal formula may stay in its context.
/// Cut premises may come in either order. Throws DerivationError (kinds
/// RuleViolation, SideConditionViolation, CutForbidden, IllFormedSequent).
MixedSequent check_sc(const ScDerivation& d, bool allow_cut);

/// left, ~right |- focus.
SimpleSequent neg_delta(const MixedSequent& s);

/// Decides cut-free derivability of `goal` exactly and returns a cut-free
/// derivation, or nullopt when none exists.
std::optional<ScDerivation> cutfree_search(const MixedSequent& goal);

}  // namespace pml
