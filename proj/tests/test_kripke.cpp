#include <doctest.h>

#include "common.hpp"
#include "corpus.hpp"
#include "oracle.hpp"
#include "pml/kripke.hpp"

using namespace pml;
using testing::F;

namespace {

RawModel raw(std::vector<std::string> worlds, std::vector<std::pair<std::string, std::string>> leq,
             std::vector<std::pair<std::string, std::string>> forcing, std::vector<std::string> sig) {
  RawModel r;
  r.worlds = std::move(worlds);
  r.leq = std::move(leq);
  for (auto& [w, a] : forcing) r.forcing.emplace_back(w, parse_atom(a));
  for (auto& a : sig) r.signature.push_back(parse_atom(a));
  return r;
}

oracle::Model two_world_oracle() {
  return oracle::Model({"alpha", "beta"}, {{"alpha", "beta"}}, {{"beta", "X_m"}, {"beta", "bot"}, {"beta", "X_c"}});
}

ModelError::Kind error_kind(const RawModel& r) {
  try {
    MixedModel::validate(r);
  } catch (const ModelError& e) {
    return e.kind();
  }
  FAIL("model unexpectedly valid");
  return ModelError::Kind::NotAPoset;
}

}  // namespace

TEST_CASE("validate_model examples") {
  MixedModel m = testing::model_fixture("two_world_model.json");
  CHECK(m.size() == 2);
  CHECK(m.leq(m.world_index("alpha"), m.world_index("beta")));
  CHECK_FALSE(m.leq(m.world_index("beta"), m.world_index("alpha")));

  RawModel literal = raw_model_from_json(read_json_file(testing::fixture("two_world_model_literal.json")));
  CHECK(error_kind(literal) == ModelError::Kind::BottomConditionViolation);
  try {
    MixedModel::validate(literal);
  } catch (const ModelError& e) {
    CHECK(std::string(e.what()).find("beta") != std::string::npos);
    CHECK(std::string(e.what()).find("X_c") != std::string::npos);
  }

  MixedModel single = MixedModel::validate(raw({"w"}, {}, {}, {}));
  CHECK(single.size() == 1);
  CHECK(single.signature() == FormulaSet{Formula::bottom()});
}

TEST_CASE("validation failures") {
  CHECK(error_kind(raw({"a", "b"}, {{"a", "b"}, {"b", "a"}}, {}, {})) == ModelError::Kind::NotAPoset);
  CHECK(error_kind(raw({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}, {}, {})) == ModelError::Kind::NotAPoset);
  CHECK(error_kind(raw({"a", "b"}, {{"a", "b"}}, {{"a", "X_m"}}, {"X_m"})) == ModelError::Kind::MonotonicityViolation);
  CHECK(error_kind(raw({"a", "b"}, {{"a", "b"}}, {{"b", "bot"}}, {"X_i"})) ==
        ModelError::Kind::BottomConditionViolation);
  CHECK(error_kind(raw({"a", "b"}, {{"a", "b"}}, {{"b", "X_c"}}, {"X_c"})) ==
        ModelError::Kind::ClassicalConditionViolation);
  CHECK(error_kind(raw({"a", "b"}, {}, {{"a", "X_c"}}, {"X_c"})) == ModelError::Kind::ClassicalConditionViolation);
  CHECK(error_kind(raw({"a"}, {}, {{"a", "Y_m"}}, {"X_m"})) == ModelError::Kind::SignatureMismatch);
  CHECK(error_kind(raw({"a"}, {{"a", "z"}}, {}, {})) == ModelError::Kind::UnknownWorld);
  CHECK(error_kind(raw({"a", "a"}, {}, {}, {})) == ModelError::Kind::NotAPoset);
  CHECK(error_kind(raw({}, {}, {}, {})) == ModelError::Kind::NotAPoset);
}

TEST_CASE("minimal variables are not touched by the bottom condition") {
  MixedModel m = MixedModel::validate(raw({"a"}, {}, {{"a", "bot"}}, {"X_m"}));
  CHECK_FALSE(forces(m, 0, F("X_m")));
}

TEST_CASE("order pairs are closed transitively") {
  MixedModel m = MixedModel::validate(raw({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, {}, {}));
  CHECK(m.leq(0, 2));
  CHECK(m.leq(1, 1));
}

TEST_CASE("forces on the two-world model") {
  MixedModel m = testing::model_fixture("two_world_model.json");
  oracle::Model o = two_world_oracle();
  CHECK(forces(m, "alpha", F("X_c -> X_m")) == o.forces("alpha", F("X_c -> X_m")));
  CHECK(forces(m, "alpha", F("X_c -> X_m")));
  CHECK_FALSE(forces(m, "alpha", F("X_m")));
  CHECK(forces(m, "beta", F("X_m -> X_m")));
  CHECK(valid_in(m, F("X_c -> X_m")));
  CHECK_FALSE(valid_in(m, F("X_m")));
  std::vector<Formula> gamma{F("X_c -> X_m")};
  CHECK_FALSE(entails(m, gamma, F("X_m")));
  CHECK(entails(m, {}, F("X_c | ~X_c")));
  std::vector<Formula> xm{F("X_m")};
  CHECK(entails(m, xm, F("X_m")));
  CHECK_THROWS_AS(forces(m, "alpha", F("Y_m")), ModelError);
  CHECK_THROWS_AS(forces(m, "gamma", F("X_m")), ModelError);
}

TEST_CASE("restrict") {
  MixedModel m = testing::model_fixture("two_world_model.json");
  MixedModel r = restrict(m, ModelClass::MinimalMixed);
  CHECK(r.signature() == FormulaSet{F("X_m"), Formula::bottom()});
  CHECK(r.forced(F("X_m")).test(r.world_index("beta")));
  CHECK(r.forced(Formula::bottom()).test(r.world_index("beta")));
  CHECK_FALSE(r.forced(F("X_m")).test(r.world_index("alpha")));
  CHECK(r.to_raw().forcing.size() == 2);
  CHECK(r.fits(ModelClass::MinimalMixed));
  CHECK_FALSE(m.fits(ModelClass::MinimalMixed));

  MixedModel single = MixedModel::validate(raw({"w"}, {}, {}, {}));
  CHECK(restrict(single, ModelClass::IntuitionisticMixed).to_raw().worlds == single.to_raw().worlds);
  CHECK(restrict(single, ModelClass::IntuitionisticMixed).signature() == single.signature());

  MixedModel twice = restrict(r, ModelClass::MinimalMixed);
  CHECK(twice.signature() == r.signature());
  CHECK(twice.to_raw().forcing == r.to_raw().forcing);

  MixedModel ri = restrict(m, ModelClass::IntuitionisticMixed);
  CHECK(ri.signature() == FormulaSet{F("X_m"), Formula::bottom()});
}

TEST_CASE("poset enumeration counts") {
  // Unlabelled posets: 1, 2, 5, 16, 63; rooted ones on n points are posets on n - 1.
  CHECK(posets(1).size() == 1);
  CHECK(posets(2).size() == 2);
  CHECK(posets(3).size() == 5);
  CHECK(posets(4).size() == 16);
  CHECK(posets(5).size() == 63);
  CHECK(rooted_posets(1).size() == 1);
  CHECK(rooted_posets(5).size() == 16);
  for (const Poset& p : rooted_posets(4)) CHECK(p.up[0] == 0xF);
}

TEST_CASE("enumerated models agree with the reference evaluator") {
  std::vector<Formula> atoms{Formula::bottom(), F("X_m"), F("X_i"), F("X_c")};
  auto corpus = testing::all_formulas(atoms, 1);
  std::size_t models = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Poset& p : posets(n))
      for_each_forcing(p, atoms, [&](std::span<const std::uint64_t> masks) {
        MixedModel m = model_from_masks(p, atoms, masks);
        RawModel r = m.to_raw();
        std::vector<std::pair<std::string, std::string>> forced;
        for (auto& [w, a] : r.forcing) forced.emplace_back(w, to_string(a));
        oracle::Model o(r.worlds, r.leq, forced);
        for (Formula a : corpus)
          for (std::size_t w = 0; w < m.size(); ++w) REQUIRE(forces(m, w, a) == o.forces(m.worlds()[w], a));
        ++models;
        return true;
      });
  CHECK(models > 50);
}

TEST_CASE("semantic lemmas on small models") {
  std::vector<Formula> atoms{Formula::bottom(), F("X_i"), F("X_c")};
  auto corpus = testing::all_formulas(atoms, 2);
  for (std::size_t n = 1; n <= 2; ++n)
    for (const Poset& p : posets(n))
      for_each_forcing(p, atoms, [&](std::span<const std::uint64_t> masks) {
        MixedModel m = model_from_masks(p, atoms, masks);
        for (Formula a : corpus) {
          Bits s = forcing_set(m, a);
          for (std::size_t w = 0; w < m.size(); ++w)
            if (s.test(w)) REQUIRE(m.up(w).is_subset_of(s));
          if (is_intuitionistic(a)) REQUIRE(valid_in(m, Formula::imp(Formula::bottom(), a)));
          if (is_classical(a)) REQUIRE(valid_in(m, Formula::imp(Formula::neg(Formula::neg(a)), a)));
        }
        return true;
      });
}

TEST_CASE("classical formulas are rigid above worlds not forcing bottom") {
  // Some world not forcing bottom forces B, so every world forces B.
  std::vector<Formula> atoms{Formula::bottom(), F("X_c"), F("Y_c")};
  auto corpus = testing::all_formulas(atoms, 2);
  for (std::size_t n = 1; n <= 3; ++n)
    for (const Poset& p : posets(n))
      for_each_forcing(p, atoms, [&](std::span<const std::uint64_t> masks) {
        MixedModel m = model_from_masks(p, atoms, masks);
        const Bits& bot = m.forced(Formula::bottom());
        for (Formula b : corpus) {
          Bits s = forcing_set(m, b);
          if (s.intersects(~bot)) REQUIRE(s.all());
        }
        return true;
      });
}

TEST_CASE("the literal rigidity statement fails on the two-world model") {
  MixedModel m = testing::model_fixture("two_world_model.json");
  CHECK(forces(m, "beta", Formula::bottom()));
  CHECK_FALSE(forces(m, "alpha", Formula::bottom()));
  CHECK(forces(m, "beta", F("X_c")));
  CHECK_FALSE(forces(m, "alpha", F("X_c")));
}

TEST_CASE("model JSON round trip") {
  MixedModel m = testing::model_fixture("two_world_model.json");
  MixedModel back = MixedModel::validate(raw_model_from_json(to_json(m)));
  CHECK(back.to_raw().forcing == m.to_raw().forcing);
  CHECK(back.to_raw().leq == m.to_raw().leq);
  CHECK(back.signature() == m.signature());
}
