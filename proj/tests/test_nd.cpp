#include <doctest.h>

#include <functional>

#include "common.hpp"
#include "pml/decide.hpp"
#include "pml/kripke.hpp"
#include "pml/nd.hpp"

using namespace pml;
using testing::F;

namespace {

DerivationError::Kind nd_error(const NdDerivation& d, RuleSet rs) {
  try {
    check_nd(d, rs);
  } catch (const DerivationError& e) {
    return e.kind();
  }
  FAIL("derivation unexpectedly accepted");
  return DerivationError::Kind::RuleViolation;
}

std::string nd_error_path(const NdDerivation& d, RuleSet rs) {
  try {
    check_nd(d, rs);
  } catch (const DerivationError& e) {
    return e.path();
  }
  return "accepted";
}

NdDerivation map_formulas(const NdDerivation& d, const std::function<Formula(Formula)>& fn) {
  NdDerivation out;
  out.rule = d.rule;
  for (Formula h : d.conclusion.hyps) out.conclusion.hyps.insert(fn(h));
  out.conclusion.goal = fn(d.conclusion.goal);
  for (const auto& p : d.premises) out.premises.push_back(map_formulas(p, fn));
  return out;
}

NdDerivation ax(const std::string& a) { return {NdRule::Ax, {{F(a)}, F(a)}, {}}; }

// Every model with at most `max_worlds` worlds over the given atoms.
void for_each_model(std::vector<Formula> atoms, std::size_t max_worlds, const std::function<void(const MixedModel&)>& fn) {
  if (std::find(atoms.begin(), atoms.end(), Formula::bottom()) == atoms.end()) atoms.insert(atoms.begin(), Formula::bottom());
  for (std::size_t n = 1; n <= max_worlds; ++n)
    for (const Poset& p : posets(n))
      for_each_forcing(p, atoms, [&](std::span<const std::uint64_t> masks) {
        fn(model_from_masks(p, atoms, masks));
        return true;
      });
}

const char* kSortedFixtures[] = {"excluded_middle_c.json", "mixed_linearity.json", "vee_nonclassical.json"};

}  // namespace

TEST_CASE("rule arities") {
  CHECK(arity(NdRule::Ax) == 0);
  for (NdRule r : {NdRule::W, NdRule::AndE1, NdRule::AndE2, NdRule::OrI1, NdRule::OrI2, NdRule::ImpI, NdRule::BotI,
                   NdRule::BotC})
    CHECK(arity(r) == 1);
  CHECK(arity(NdRule::AndI) == 2);
  CHECK(arity(NdRule::ImpE) == 2);
  CHECK(arity(NdRule::OrE) == 3);
  CHECK(nd_rule_from_string("OrE") == NdRule::OrE);
  CHECK_THROWS(nd_rule_from_string("Cut"));
}

TEST_CASE("excluded middle for a classical variable fixture") {
  NdDerivation d = testing::nd_fixture("excluded_middle_c.json");
  SimpleSequent s = check_nd(d, RuleSet::PML);
  CHECK(s.hyps.empty());
  CHECK(s.goal == F("X_c | ~X_c"));
  CHECK(d.height() == 8);
  CHECK(nd_error(d, RuleSet::I) == DerivationError::Kind::ForbiddenRule);
  CHECK(nd_error(d, RuleSet::M) == DerivationError::Kind::ForbiddenRule);
  CHECK(check_nd(d, RuleSet::IPrime) == s);
}

TEST_CASE("mixed linearity fixture") {
  NdDerivation d = testing::nd_fixture("mixed_linearity.json");
  SimpleSequent s = check_nd(d, RuleSet::PML);
  CHECK(s.hyps.empty());
  CHECK(s.goal == F("(X_m -> X_c) | (X_c -> X_i)"));
}

TEST_CASE("the PML-vee restriction rejects a non-classical OrE node") {
  NdDerivation d = testing::nd_fixture("vee_nonclassical.json");
  SimpleSequent s = check_nd(d, RuleSet::PML);
  CHECK(s.goal == F("(X_c -> X_m) -> (~X_c -> X_m) -> X_m"));
  try {
    check_nd(d, RuleSet::PMLVee);
    FAIL("expected a rejection");
  } catch (const DerivationError& e) {
    CHECK(e.kind() == DerivationError::Kind::RuleViolation);
    CHECK(std::string(e.what()).find("OrE") != std::string::npos);
    // Walk the path down and confirm it names an OrE node.
    const NdDerivation* node = &d;
    std::string path = e.path();
    if (path != "root") {
      std::size_t pos = 0;
      while (pos <= path.size()) {
        std::size_t dot = path.find('.', pos);
        if (dot == std::string::npos) dot = path.size();
        node = &node->premises.at(std::stoul(path.substr(pos, dot - pos)));
        pos = dot + 1;
      }
    }
    CHECK(node->rule == NdRule::OrE);
    CHECK(node->premises[0].conclusion.goal == F("X_c | ~X_c"));
    CHECK(node->conclusion.goal == F("X_m"));
  }
}

TEST_CASE("local rule violations") {
  SUBCASE("Ax needs its goal among the hypotheses") {
    NdDerivation bad{NdRule::Ax, {{F("Y_m")}, F("X_m")}, {}};
    CHECK(nd_error(bad, RuleSet::PML) == DerivationError::Kind::RuleViolation);
    CHECK(nd_error_path(bad, RuleSet::PML) == "root");
  }
  SUBCASE("BotI only concludes intuitionistic formulas") {
    NdDerivation bot{NdRule::Ax, {{Formula::bottom()}, Formula::bottom()}, {}};
    NdDerivation d{NdRule::BotI, {{Formula::bottom()}, F("X_m")}, {bot}};
    CHECK(nd_error(d, RuleSet::PML) == DerivationError::Kind::SideConditionViolation);
    d.conclusion.goal = F("X_i");
    CHECK(check_nd(d, RuleSet::PML).goal == F("X_i"));
    CHECK(nd_error(d, RuleSet::IPrime) == DerivationError::Kind::ForbiddenRule);
  }
  SUBCASE("BotC only concludes classical formulas") {
    NdDerivation nn = ax("~~X_i");
    NdDerivation d{NdRule::BotC, {{F("~~X_i")}, F("X_i")}, {nn}};
    CHECK(nd_error(d, RuleSet::PML) == DerivationError::Kind::SideConditionViolation);
  }
  SUBCASE("the offending node is named by its path") {
    NdDerivation d = testing::nd_fixture("excluded_middle_c.json");
    d.premises[0].premises[0].premises[1].rule = NdRule::W;
    CHECK(nd_error_path(d, RuleSet::PML) == "0.0.1");
  }
  SUBCASE("wrong arity") {
    NdDerivation d{NdRule::AndI, {{F("X_m")}, F("X_m & X_m")}, {ax("X_m")}};
    CHECK(nd_error(d, RuleSet::PML) == DerivationError::Kind::RuleViolation);
  }
}

TEST_CASE("discharge and context semantics") {
  // Vacuous discharge.
  NdDerivation vac{NdRule::ImpI, {{F("X_m")}, F("Y_m -> X_m")}, {ax("X_m")}};
  CHECK(check_nd(vac, RuleSet::M).goal == F("Y_m -> X_m"));
  // Overlapping contexts in AndI.
  NdDerivation both{NdRule::AndI, {{F("X_m")}, F("X_m & X_m")}, {ax("X_m"), ax("X_m")}};
  CHECK(check_nd(both, RuleSet::M).hyps == FormulaSet{F("X_m")});
  // ImpE premises in either order.
  NdDerivation major = ax("X_m -> Y_m"), minor = ax("X_m");
  NdDerivation e1{NdRule::ImpE, {{F("X_m -> Y_m"), F("X_m")}, F("Y_m")}, {major, minor}};
  NdDerivation e2{NdRule::ImpE, {{F("X_m -> Y_m"), F("X_m")}, F("Y_m")}, {minor, major}};
  CHECK(check_nd(e1, RuleSet::M).goal == F("Y_m"));
  CHECK(check_nd(e2, RuleSet::M).goal == F("Y_m"));
  // Conclusion context must be the union.
  NdDerivation extra = e1;
  extra.conclusion.hyps.insert(F("Z_m"));
  CHECK(nd_error(extra, RuleSet::M) == DerivationError::Kind::RuleViolation);
}

TEST_CASE("rule set monotonicity") {
  std::vector<SimpleSequent> goals{
      {{F("X_m")}, F("X_m")},
      {{F("X_m -> Y_m"), F("X_m")}, F("Y_m")},
      {{}, F("X_m & Y_m -> Y_m & X_m")},
      {{}, F("X_m | Y_m -> Y_m | X_m")},
      {{}, F("X_m -> ~~X_m")},
  };
  for (const auto& s : goals) {
    auto d = nd_search(s, RuleSet::M, 8);
    REQUIRE(d.has_value());
    for (RuleSet rs : {RuleSet::M, RuleSet::I, RuleSet::IPrime, RuleSet::PMLVee, RuleSet::PML})
      CHECK(check_nd(*d, rs) == s);
  }
  for (const char* name : kSortedFixtures) {
    NdDerivation d = testing::nd_fixture(name);
    bool vee = true;
    try {
      check_nd(d, RuleSet::PMLVee);
    } catch (const DerivationError&) {
      vee = false;
    }
    if (vee) CHECK_NOTHROW(check_nd(d, RuleSet::PML));
  }
}

TEST_CASE("soundness of the fixture derivations on small models") {
  for (const char* name : kSortedFixtures) {
    SimpleSequent s = check_nd(testing::nd_fixture(name), RuleSet::PML);
    FormulaSet atoms = vars(s.goal);
    for (Formula h : s.hyps)
      for (Formula v : vars(h)) atoms.insert(v);
    std::vector<Formula> gamma(s.hyps.begin(), s.hyps.end());
    std::size_t count = 0;
    for_each_model({atoms.begin(), atoms.end()}, 3, [&](const MixedModel& m) {
      REQUIRE(entails(m, gamma, s.goal));
      ++count;
    });
    CHECK(count > 0);
  }
}

TEST_CASE("erase_labels") {
  SUBCASE("excluded middle erases to a classical derivation of X | ~X") {
    OrdinaryDerivation e = erase_labels(testing::nd_fixture("excluded_middle_c.json"));
    CHECK(e.conclusion().goal == testing::O("X | ~X").formula());
    CHECK(e.tree().rule == NdRule::BotC);
    CHECK(check_ordinary(e.tree(), OrdinaryLogic::PLC).goal == e.conclusion().goal);
    CHECK_THROWS_AS(check_ordinary(e.tree(), OrdinaryLogic::PLI), DerivationError);
  }
  SUBCASE("the linearity tree renamed and erased is the ordinary fixture") {
    NdDerivation d = testing::nd_fixture("mixed_linearity.json");
    NdDerivation renamed = map_formulas(d, [](Formula f) {
      f = substitute(f, F("Z_m"), F("X_m"));
      return substitute(f, F("Y_i"), F("X_i"));
    });
    CHECK(check_nd(renamed, RuleSet::PML).goal == F("(Z_m -> X_c) | (X_c -> Y_i)"));
    OrdinaryDerivation e = erase_labels(renamed);
    CHECK(e.tree() == testing::nd_fixture("ordinary_zx_xy.json"));
  }
  SUBCASE("an axiom node") {
    OrdinaryDerivation e = erase_labels(ax("X_i"));
    CHECK(e.tree().rule == NdRule::Ax);
    CHECK(e.conclusion().goal == Formula::ordinary("X"));
  }
  SUBCASE("invalid input") { CHECK_THROWS_AS(erase_labels(NdDerivation{NdRule::Ax, {{}, F("X_m")}, {}}), DerivationError); }
}

TEST_CASE("ordinary derivations") {
  NdDerivation ex = testing::nd_fixture("ordinary_zx_xy.json");
  CHECK_NOTHROW(OrdinaryDerivation{ex});
  CHECK_THROWS_AS(OrdinaryDerivation{testing::nd_fixture("excluded_middle_c.json")}, DerivationError);
  CHECK_THROWS_AS(check_ordinary(ex, OrdinaryLogic::PLM), DerivationError);
}

TEST_CASE("nd_search examples") {
  SUBCASE("excluded middle for a classical variable") {
    SimpleSequent s{{}, F("X_c | ~X_c")};
    auto d = nd_search(s, RuleSet::PML, 12);
    REQUIRE(d.has_value());
    CHECK(check_nd(*d, RuleSet::PML) == s);
    CHECK(d->height() <= 12);
  }
  SUBCASE("an axiom") {
    SimpleSequent s{{F("X_m")}, F("X_m")};
    for (RuleSet rs : {RuleSet::PML, RuleSet::I, RuleSet::M, RuleSet::IPrime, RuleSet::PMLVee}) {
      auto d = nd_search(s, rs, 1);
      REQUIRE(d.has_value());
      CHECK(d->rule == NdRule::Ax);
    }
  }
  SUBCASE("no proof of excluded middle for a minimal variable") {
    CHECK_FALSE(nd_search({{}, F("X_m | ~X_m")}, RuleSet::PML, 12).has_value());
  }
  SUBCASE("mixed linearity and its implicational variant") {
    for (const char* text : {"(X_m -> X_c) | (X_c -> X_i)", "(X_c -> X_m | X_i) -> X_m | (X_c -> X_i)"}) {
      SimpleSequent s{{}, F(text)};
      auto d = nd_search(s, RuleSet::PML, 14);
      REQUIRE(d.has_value());
      CHECK(check_nd(*d, RuleSet::PML) == s);
    }
  }
  SUBCASE("search results are derivable per decide") {
    for (const char* text : {"X_i & Y_m -> Y_m", "bot -> X_i", "~~X_c -> X_c", "((X_c -> Y_c) -> X_c) -> X_c"}) {
      SimpleSequent s{{}, F(text)};
      auto d = nd_search(s, RuleSet::PML, 12);
      REQUIRE(d.has_value());
      CHECK(std::holds_alternative<Derivable>(decide(s.hyps, s.goal, RuleSet::PML)));
    }
  }
}
