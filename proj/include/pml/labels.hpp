#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pml/decide.hpp"
#include "pml/formula.hpp"
#include "pml/nd.hpp"

namespace pml {

/// Assignment of sorts to ordinary variable names. Unmapped names are m; only
/// entries above m are stored, so equal labels compare equal.
class Label {
 public:
  Label() = default;
  Label(std::initializer_list<std::pair<std::string, Sort>> entries);

  Sort operator()(const std::string& name) const;
  void set(const std::string& name, Sort s);
  /// Entries with sort i or c.
  const std::map<std::string, Sort>& entries() const { return entries_; }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::map<std::string, Sort> entries_;
};

/// Pointwise order.
bool leq(const Label& a, const Label& b);
bool less(const Label& a, const Label& b);

/// Pointwise maximum. Throws PreconditionViolation on an empty list.
Label sup(std::span<const Label> ls);

/// The label sending every variable to c.
Label label_c(const OrdinaryFormula& a);

/// "{X: c, Y: i}" listing every variable of `names`, m included.
std::string to_string(const Label& l, const std::set<std::string>& names);

Formula apply_label(const Label& l, const OrdinaryFormula& a);
/// Relabels every formula of an ordinary tree; the absurdity nodes keep their
/// rule names and become BotI/BotC of PML.
NdDerivation apply_label(const Label& l, const OrdinaryDerivation& d);

/// Minimal labels l of `a` with decide({}, l(a), PML) = Derivable, ordered by
/// label_order. Throws NotClassicallyValid if `a` is not a tautology and Error
/// if decide answers Unknown on a label it has to settle.
std::vector<Label> minimal_labels(const OrdinaryFormula& a, const DecideConfig& cfg = {});

/// Lexicographic order over the variables of `names` by name, comparing sorts.
bool label_order(const Label& a, const Label& b, const std::set<std::string>& names);

/// The least label under which `d` is a PML derivation.
Label derivation_label(const OrdinaryDerivation& d);

using GoodDerivation = std::variant<OrdinaryDerivation, Unknown>;

/// Searches a PML derivation of l(a) for the first minimal label l and erases
/// its sorts. Throws NotClassicallyValid.
GoodDerivation good_derivation(const OrdinaryFormula& a, std::size_t depth_limit, const DecideConfig& cfg = {});

}  // namespace pml
