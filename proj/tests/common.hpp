#pragma once

#include <string>

#include "pml/json_io.hpp"

#ifndef PML_FIXTURE_DIR
#error "PML_FIXTURE_DIR must be defined"
#endif

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(PML_FIXTURE_DIR) + "/" + name; }

inline pml::NdDerivation nd_fixture(const std::string& name) {
  return pml::nd_from_json(pml::read_json_file(fixture(name)));
}

inline pml::ScDerivation sc_fixture(const std::string& name) {
  return pml::sc_from_json(pml::read_json_file(fixture(name)));
}

inline pml::MixedModel model_fixture(const std::string& name) {
  return pml::MixedModel::validate(pml::raw_model_from_json(pml::read_json_file(fixture(name))));
}

inline pml::Formula F(const std::string& text) { return pml::parse_sorted(text); }
inline pml::OrdinaryFormula O(const std::string& text) { return pml::parse_ordinary(text); }

}  // namespace testing
