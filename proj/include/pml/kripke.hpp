#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pml/bits.hpp"
#include "pml/error.hpp"
#include "pml/formula.hpp"

namespace pml {

enum class ModelClass { Mixed, IntuitionisticMixed, MinimalMixed };

const char* to_string(ModelClass cls);

class ModelError : public Error {
 public:
  enum class Kind {
    NotAPoset,
    MonotonicityViolation,
    BottomConditionViolation,
    ClassicalConditionViolation,
    SignatureMismatch,
    UnknownWorld,
    ClassMismatch,
  };

  ModelError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Unvalidated model description, as read from a model file.
struct RawModel {
  std::vector<std::string> worlds;
  std::vector<std::pair<std::string, std::string>> leq;
  std::vector<std::pair<std::string, Formula>> forcing;
  std::vector<Formula> signature;
};

/// A finite mixed Kripke model: a poset of worlds with an atomic forcing
/// relation that is upward closed, saturated at worlds forcing Bottom (every
/// non-minimal signature variable is forced there), and rigid for classical
/// variables at worlds not forcing Bottom.
///
/// The signature always contains Bottom. Only validated instances exist.
class MixedModel {
 public:
  /// Closes `raw.leq` reflexively and transitively and checks the three
  /// model conditions. Throws ModelError.
  static MixedModel validate(const RawModel& raw);

  std::size_t size() const { return worlds_.size(); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  /// Throws ModelError(UnknownWorld).
  std::size_t world_index(std::string_view name) const;

  bool leq(std::size_t w, std::size_t v) const { return up_[w].test(v); }
  /// Worlds v with w <= v.
  const Bits& up(std::size_t w) const { return up_[w]; }

  const FormulaSet& signature() const { return signature_; }
  bool in_signature(Formula atom) const { return signature_.contains(atom); }

  /// Worlds forcing a signature atom. Throws ModelError(SignatureMismatch).
  const Bits& forced(Formula atom) const;
  bool forces_atom(std::size_t w, Formula atom) const { return forced(atom).test(w); }

  /// Whether the signature respects the atom restriction of `cls`.
  bool fits(ModelClass cls) const;

  /// Closed order (without reflexive pairs), forcing sorted by world then atom.
  RawModel to_raw() const;

 private:
  MixedModel() = default;

  std::vector<std::string> worlds_;
  std::vector<Bits> up_;
  FormulaSet signature_;
  std::map<Formula, Bits> forcing_;
};

/// Set of worlds forcing `a`. Throws ModelError(SignatureMismatch) if a
/// variable of `a` is outside the signature.
Bits forcing_set(const MixedModel& m, Formula a);

bool forces(const MixedModel& m, std::size_t w, Formula a);
bool forces(const MixedModel& m, std::string_view world, Formula a);
bool valid_in(const MixedModel& m, Formula a);

/// True iff some hypothesis is not valid in `m` or `a` is valid in `m`.
bool entails(const MixedModel& m, std::span<const Formula> gamma, Formula a);

/// Same worlds and order; signature and forcing cut down to the atoms allowed
/// by `cls` (no classical variables for IntuitionisticMixed, only minimal
/// variables and Bottom for MinimalMixed).
MixedModel restrict(const MixedModel& m, ModelClass cls);

/// Whether an atom may appear in the signature of a model of class `cls`.
bool atom_allowed(Formula atom, ModelClass cls);

// Finite poset and model enumeration. Worlds are numbered 0..n-1 and every
// order is a natural labelling (w <= v implies w <= v numerically), so in
// rooted posets world 0 is the least element.

struct Poset {
  std::size_t n = 0;
  /// up[w]: bitmask of worlds v with w <= v.
  std::vector<std::uint64_t> up;
};

/// All partial orders on n points, one per isomorphism class when n <= 6
/// (larger n may contain isomorphic duplicates). Deterministic order.
const std::vector<Poset>& posets(std::size_t n);
/// Partial orders on n points with world 0 below every world.
const std::vector<Poset>& rooted_posets(std::size_t n);

/// Up-closed subsets of the poset as bitmasks, in increasing numeric order.
std::vector<std::uint64_t> up_sets(const Poset& p);

/// Calls `fn(masks)` for every forcing relation over `atoms` (which must
/// include Bottom) satisfying the three model conditions, where masks[k] is
/// the set of worlds forcing atoms[k]. Returning false from `fn` stops the
/// enumeration; the function then returns false.
bool for_each_forcing(const Poset& p, std::span<const Formula> atoms,
                      const std::function<bool(std::span<const std::uint64_t>)>& fn);

/// Builds a validated model with worlds "w0".."w{n-1}".
MixedModel model_from_masks(const Poset& p, std::span<const Formula> atoms, std::span<const std::uint64_t> masks);

}  // namespace pml
