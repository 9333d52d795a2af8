#include <doctest.h>

#include <random>

#include "common.hpp"
#include "corpus.hpp"
#include "oracle.hpp"
#include "pml/decide.hpp"

using namespace pml;
using testing::F;

namespace {

bool derivable(const Verdict& v) { return std::holds_alternative<Derivable>(v); }
bool refuted(const Verdict& v) { return std::holds_alternative<NotDerivable>(v); }

Verdict decide_goal(const std::string& goal, RuleSet rs = RuleSet::PML, DecideConfig cfg = {}) {
  return decide({}, F(goal), rs, cfg);
}

// Independent check of a countermodel, rebuilt through the reference evaluator.
void check_countermodel(const NotDerivable& nd, const FormulaSet& gamma, Formula goal) {
  RawModel r = nd.model().to_raw();
  std::vector<std::pair<std::string, std::string>> forced;
  for (auto& [w, a] : r.forcing) forced.emplace_back(w, to_string(a));
  oracle::Model o(r.worlds, r.leq, forced);
  for (Formula h : gamma) CHECK(o.valid(h));
  CHECK_FALSE(o.forces(nd.world_name(), goal));
}

}  // namespace

TEST_CASE("reduce_to_core examples") {
  SimpleSequent s = reduce_to_core({}, F("X_c | ~X_c"), RuleSet::PML);
  CHECK(s.hyps == FormulaSet{F("bot -> X_c"), F("X_c | ~X_c")});
  CHECK(s.goal == F("X_c | ~X_c"));

  SimpleSequent m = reduce_to_core({}, F("X_m -> X_m"), RuleSet::M);
  CHECK(m.hyps.empty());
  CHECK(m.goal == F("X_m -> X_m"));

  CHECK_THROWS_AS(reduce_to_core({}, F("X_c | X_i"), RuleSet::I), PreconditionViolation);
}

TEST_CASE("reduce_to_core axiom families") {
  FormulaSet gamma{F("Y_i")};
  CHECK(reduce_to_core(gamma, F("X_m | X_c"), RuleSet::PML).hyps ==
        FormulaSet{F("Y_i"), F("bot -> Y_i"), F("bot -> X_c"), F("X_c | ~X_c")});
  CHECK(reduce_to_core(gamma, F("X_m"), RuleSet::I).hyps == FormulaSet{F("Y_i"), F("bot -> Y_i")});
  CHECK(reduce_to_core({}, F("X_m | X_c"), RuleSet::IPrime).hyps == FormulaSet{F("bot -> X_c"), F("X_c | ~X_c")});
  CHECK_THROWS_AS(reduce_to_core({}, F("X_i"), RuleSet::M), PreconditionViolation);
  CHECK_THROWS_AS(reduce_to_core({}, F("X_i"), RuleSet::IPrime), PreconditionViolation);
  CHECK_THROWS_AS(reduce_to_core({}, F("X_m"), RuleSet::PMLVee), UnsupportedRuleSet);
  CHECK_THROWS_AS(reduce_to_core({}, Formula::ordinary("X"), RuleSet::PML), SortViolation);
}

TEST_CASE("core_decide examples") {
  CHECK(std::holds_alternative<Derivable>(core_decide({{}, F("X_m -> X_m")})));

  CoreResult r = core_decide({{}, F("X_m | ~X_m")});
  REQUIRE(std::holds_alternative<RootedModel>(r));
  const RootedModel& m = std::get<RootedModel>(r);
  CHECK(m.size() >= 2);
  CHECK(m.up[0].all());
  CHECK_FALSE(core_forces(m, 0, F("X_m | ~X_m")));

  SimpleSequent peirce = reduce_to_core({}, F("((X_c -> Y_c) -> X_c) -> X_c"), RuleSet::PML);
  CHECK(std::holds_alternative<Derivable>(core_decide(peirce)));

  // Bottom is inert in the core logic.
  CHECK(std::holds_alternative<RootedModel>(core_decide({{}, F("bot -> X_m")})));
}

TEST_CASE("core countermodels are rooted and refute the sequent") {
  std::vector<Formula> atoms{F("P_m"), F("Q_m"), Formula::bottom()};
  for (Formula a : testing::all_formulas(atoms, 2)) {
    CoreResult r = core_decide({{}, a});
    if (auto* m = std::get_if<RootedModel>(&r)) {
      REQUIRE(m->up[0].all());
      for (std::size_t w = 0; w < m->size(); ++w) REQUIRE(m->up[w].test(w));
      REQUIRE_FALSE(core_forces(*m, 0, a));
    }
  }
}

TEST_CASE("decide examples") {
  CHECK(derivable(decide_goal("X_c | ~X_c")));
  CHECK(derivable(decide_goal("(X_m -> X_c) | (X_c -> X_i)")));
  CHECK(derivable(decide_goal("(X_c -> X_m | X_i) -> (X_m | (X_c -> X_i))")));

  FormulaSet gamma{F("X_c -> X_m")};
  Verdict v = decide(gamma, F("X_m"), RuleSet::PML);
  REQUIRE(refuted(v));
  check_countermodel(std::get<NotDerivable>(v), gamma, F("X_m"));

  Verdict dm = decide_goal("~(~X_m & ~Y_m) -> (X_m | Y_m)");
  REQUIRE(refuted(dm));
  check_countermodel(std::get<NotDerivable>(dm), {}, F("~(~X_m & ~Y_m) -> (X_m | Y_m)"));
}

TEST_CASE("decide refutes excluded middle below the classical sort") {
  for (const char* text : {"X_m | ~X_m", "X_i | ~X_i"}) {
    Verdict v = decide_goal(text);
    REQUIRE(refuted(v));
    check_countermodel(std::get<NotDerivable>(v), {}, F(text));
  }
}

TEST_CASE("decide under restricted rule sets") {
  CHECK(derivable(decide_goal("bot -> X_i", RuleSet::I)));
  CHECK(refuted(decide_goal("bot -> X_m", RuleSet::M)));
  CHECK(derivable(decide_goal("~~X_c -> X_c", RuleSet::IPrime)));
  CHECK(refuted(decide_goal("~~X_i -> X_i", RuleSet::I)));
  CHECK_THROWS_AS(decide_goal("X_c", RuleSet::I), PreconditionViolation);
  CHECK_THROWS_AS(decide_goal("X_m", RuleSet::PMLVee), UnsupportedRuleSet);
}

TEST_CASE("engines") {
  DecideConfig reduction{5, Engine::Reduction};
  DecideConfig brute{3, Engine::BruteForce};
  CHECK(derivable(decide_goal("X_c | ~X_c", RuleSet::PML, reduction)));
  CHECK(std::holds_alternative<Unknown>(decide_goal("X_c | ~X_c", RuleSet::PML, brute)));
  CHECK(refuted(decide_goal("X_i | ~X_i", RuleSet::PML, brute)));
  CHECK(refuted(decide_goal("X_i | ~X_i", RuleSet::PML, reduction)));
  CHECK(engine_from_string("brute-force") == Engine::BruteForce);
  CHECK(engine_from_string("both") == Engine::Both);
  CHECK_THROWS_AS(engine_from_string("sat"), FormatError);
  CHECK_THROWS_AS(decide_goal("X_m", RuleSet::PML, DecideConfig{0, Engine::Both}), PreconditionViolation);
  CHECK(std::string(verdict_name(decide_goal("X_m"))) == "NotDerivable");
  CHECK(std::string(verdict_name(decide_goal("X_m -> X_m"))) == "Derivable");
}

TEST_CASE("brute_force examples") {
  auto em = brute_force({}, F("X_i | ~X_i"), ModelClass::Mixed, 2);
  REQUIRE(em.has_value());
  const MixedModel& m = em->model();
  REQUIRE(m.size() == 2);
  std::size_t root = em->world();
  std::size_t top = 1 - root;
  CHECK(m.leq(root, top));
  CHECK_FALSE(m.forces_atom(root, F("X_i")));
  CHECK(m.forces_atom(top, F("X_i")));
  CHECK_FALSE(m.forces_atom(top, Formula::bottom()));

  CHECK_FALSE(brute_force({}, F("X_c | ~X_c"), ModelClass::Mixed, 5).has_value());
  CHECK_FALSE(brute_force({F("X_m")}, F("X_m"), ModelClass::Mixed, 5).has_value());
  CHECK_THROWS_AS(brute_force({}, F("X_c"), ModelClass::IntuitionisticMixed, 2), PreconditionViolation);
  CHECK_THROWS_AS(brute_force({}, F("X_i"), ModelClass::MinimalMixed, 2), PreconditionViolation);
  CHECK(brute_force({}, F("bot -> X_m"), ModelClass::MinimalMixed, 1).has_value());
}

TEST_CASE("NotDerivable re-checks its model") {
  MixedModel m = testing::model_fixture("two_world_model.json");
  CHECK_NOTHROW(NotDerivable(m, m.world_index("alpha"), {F("X_c -> X_m")}, F("X_m")));
  CHECK_THROWS_AS(NotDerivable(m, m.world_index("beta"), {F("X_c -> X_m")}, F("X_m")), Error);
  CHECK_THROWS_AS(NotDerivable(m, m.world_index("alpha"), {F("X_m")}, F("X_c")), Error);
  CHECK_THROWS_AS(NotDerivable(m, 7, {}, F("X_m")), Error);
}

TEST_CASE("classical_oracle") {
  CHECK(classical_oracle(testing::O("X | ~X")));
  CHECK(classical_oracle(testing::O("((X -> Y) -> X) -> X")));
  CHECK_FALSE(classical_oracle(testing::O("X -> Y")));
  CHECK_FALSE(classical_oracle(testing::O("bot")));
  std::vector<Formula> atoms{Formula::ordinary("X"), Formula::ordinary("Y"), Formula::bottom()};
  for (Formula a : testing::all_formulas(atoms, 2)) REQUIRE(classical_oracle(OrdinaryFormula(a)) == oracle::tautology(a));
}

TEST_CASE("engines agree on a small corpus") {
  std::vector<Formula> atoms{F("X_m"), F("X_i"), F("X_c"), Formula::bottom()};
  DecideConfig reduction{5, Engine::Reduction};
  for (Formula a : testing::all_formulas(atoms, 1)) {
    Verdict r = decide({}, a, RuleSet::PML, reduction);
    auto b = brute_force({}, a, ModelClass::Mixed, 5);
    REQUIRE(!std::holds_alternative<Unknown>(r));
    CHECK(derivable(r) == !b.has_value());
    CHECK(std::holds_alternative<Derivable>(decide({}, a, RuleSet::PML)) == derivable(r));
  }
}

TEST_CASE("derivable sequents stay derivable under admissible substitutions") {
  std::vector<Formula> atoms{F("X_m"), F("X_i"), F("X_c"), Formula::bottom()};
  auto corpus = testing::all_formulas(atoms, 1);
  std::vector<Formula> derivables;
  for (Formula a : testing::all_formulas(atoms, 2))
    if (derivable(decide({}, a, RuleSet::PML))) derivables.push_back(a);
  REQUIRE(derivables.size() > 100);
  std::mt19937 rng(11);
  for (int k = 0; k < 300; ++k) {
    Formula a = derivables[rng() % derivables.size()];
    Formula f = corpus[rng() % corpus.size()];
    Formula x = F("X_m");
    if (is_classical(f) && rng() % 2) x = F("X_c");
    else if (is_intuitionistic(f) && rng() % 2)
      x = F("X_i");
    REQUIRE(derivable(decide({}, substitute(a, f, x), RuleSet::PML)));
  }
}

TEST_CASE("every fixture derivation is decided derivable") {
  for (const char* name : {"excluded_middle_c.json", "mixed_linearity.json", "vee_nonclassical.json"}) {
    SimpleSequent s = check_nd(testing::nd_fixture(name), RuleSet::PML);
    CHECK(derivable(decide(s.hyps, s.goal, RuleSet::PML)));
  }
}

TEST_CASE("model_class") {
  CHECK(model_class(RuleSet::PML) == ModelClass::Mixed);
  CHECK(model_class(RuleSet::I) == ModelClass::IntuitionisticMixed);
  CHECK(model_class(RuleSet::M) == ModelClass::MinimalMixed);
  CHECK(model_class(RuleSet::IPrime) == ModelClass::Mixed);
}
