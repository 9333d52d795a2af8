#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "pml/kripke.hpp"
#include "pml/labels.hpp"
#include "pml/nd.hpp"
#include "pml/sequent.hpp"

namespace pml {

using json = nlohmann::ordered_json;

/// Parses either kind of formula and returns the underlying tree.
Formula parse_any(std::string_view text);

json to_json(const NdDerivation& d);
/// Throws FormatError on a malformed document, ParseError on bad formulas.
NdDerivation nd_from_json(const json& j);

json to_json(const ScDerivation& d);
ScDerivation sc_from_json(const json& j);

json to_json(const MixedSequent& s);
MixedSequent mixed_sequent_from_json(const json& j);

json to_json(const MixedModel& m);
RawModel raw_model_from_json(const json& j);

/// Every variable of `names` is listed, m included.
json to_json(const Label& l, const std::set<std::string>& names = {});
Label label_from_json(const json& j);

/// Reads and parses a JSON file. Throws FormatError.
json read_json_file(const std::string& path);

}  // namespace pml
