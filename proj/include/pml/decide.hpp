#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pml/formula.hpp"
#include "pml/kripke.hpp"
#include "pml/nd.hpp"

namespace pml {

enum class Engine { Reduction, BruteForce, Both };

const char* to_string(Engine e);
Engine engine_from_string(std::string_view name);

struct DecideConfig {
  std::size_t max_model_size = 5;
  Engine engine = Engine::Both;
};

struct Derivable {};

/// A countermodel: validated, every hypothesis valid, the goal not forced at
/// `world()`. The constructor re-checks all three and throws Error otherwise.
class NotDerivable {
 public:
  NotDerivable(MixedModel model, std::size_t world, const FormulaSet& gamma, Formula goal);

  const MixedModel& model() const { return model_; }
  std::size_t world() const { return world_; }
  const std::string& world_name() const { return model_.worlds()[world_]; }

 private:
  MixedModel model_;
  std::size_t world_;
};

struct Unknown {
  std::string reason;
};

using Verdict = std::variant<Derivable, NotDerivable, Unknown>;

/// "Derivable", "NotDerivable" or "Unknown".
const char* verdict_name(const Verdict& v);

/// Adds the axiom instances that encode the absurdity rules of `rs` over the
/// variables of the input: Bottom -> X for non-minimal X and X | ~X for
/// classical X (PML, IPrime), only Bottom -> X_i (I), nothing (M). Bottom is
/// read as an inert atom by core_decide.
/// Throws PreconditionViolation when the input uses a variable sort outside
/// the rule set's conservativity range and UnsupportedRuleSet for PMLVee.
SimpleSequent reduce_to_core(const FormulaSet& gamma, Formula a, RuleSet rs);

/// Finite rooted Kripke model for the core logic. World 0 is the root and
/// `up[w]` lists the worlds above w (including w). Bottom is an ordinary atom.
struct RootedModel {
  std::vector<Bits> up;
  std::vector<FormulaSet> atoms;

  std::size_t size() const { return up.size(); }
};

bool core_forces(const RootedModel& m, std::size_t w, Formula a);

/// Decides minimal propositional logic (Bottom inert) over {&, |, ->}.
using CoreResult = std::variant<Derivable, RootedModel>;
CoreResult core_decide(const SimpleSequent& s);

/// Model class that decides `rs` semantically.
ModelClass model_class(RuleSet rs);

/// Searches rooted models of 1..max_size worlds in a fixed order and returns
/// the first countermodel to gamma |= a. nullopt proves nothing.
/// Throws PreconditionViolation if the variables do not fit `cls`.
std::optional<NotDerivable> brute_force(const FormulaSet& gamma, Formula a, ModelClass cls, std::size_t max_size);

/// Truth-table tautology check, Bottom false.
bool classical_oracle(const OrdinaryFormula& a);

Verdict decide(const FormulaSet& gamma, Formula a, RuleSet rs, const DecideConfig& cfg = {});

}  // namespace pml
