#pragma once

#include <map>
#include <set>
#include <string>

#include "pml/formula.hpp"

namespace pml {

/// Injective renaming of source variables to fresh variables of a target
/// sort. X goes to Xp, then Xpp, ... until the name is unused by the formulas
/// the map was built for and by earlier targets.
class FreshMap {
 public:
  FreshMap(const FormulaSet& formulas, Sort source, Sort target);

  /// Throws PreconditionViolation for a variable outside the source set.
  Formula operator()(Formula x) const;
  const std::map<Formula, Formula>& entries() const { return map_; }

 private:
  std::map<Formula, Formula> map_;
};

/// ^m: X_i becomes ~~X'_m, everything else homomorphic. Throws
/// ClassicalVariablePresent.
Formula m_translate(Formula a);
Formula m_translate(Formula a, const FreshMap& fresh);

/// ^i: X_c becomes ~~X'_i and disjunctions are wrapped in ~~.
Formula i_translate(Formula a);
Formula i_translate(Formula a, const FreshMap& fresh);

}  // namespace pml
