#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delp/parse.hpp"
#include "delp/protocol.hpp"

using namespace delp;

TEST_CASE("compile_protocol emits init and round axioms") {
  const BundledNS& ns = bundled_ns();
  REQUIRE(ns.theory.axioms.size() == 6);  // 3 init + 3 formalized rounds

  const Formula* r1 = ns.theory.find("round_1");
  REQUIRE(r1);
  CHECK(formula_eq_norm(*r1, parse_formula("[send A][recv S]@nonce(Na)")));

  const Formula* r3 = ns.theory.find("round_3");
  REQUIRE(r3);
  CHECK(formula_eq_norm(
      *r3, parse_formula("[send A][recv B]@{key Kab(A,B)}key Kbs(B,S)")));

  const Formula* ia = ns.theory.find("init_A");
  REQUIRE(ia);
  CHECK(formula_eq_norm(
      *ia, parse_formula("K A (@nonce(Na) /\\ @key Kas(A,S))")));
  CHECK(ns.theory.find("round_4") == nullptr);  // unformalized
}

TEST_CASE("compile_protocol edge cases") {
  ProtocolSpec spec;
  spec.name = "demo";
  spec.agents = {"A", "B"};
  spec.initial_knowledge["A"] = {};  // empty: no init axiom
  spec.rounds.push_back(Round{"A", "B", {mk_text("m")}, false});
  Theory t = compile_protocol(spec);
  REQUIRE(t.axioms.size() == 1);
  CHECK(t.axioms[0].first == "round_1");

  spec.rounds.push_back(Round{"A", "C", {mk_text("m")}, false});
  CHECK_THROWS_AS(compile_protocol(spec), std::invalid_argument);
  spec.rounds.pop_back();
  spec.rounds.push_back(Round{"A", "B", {}, false});
  CHECK_THROWS_AS(compile_protocol(spec), std::invalid_argument);
}

TEST_CASE("compilation is deterministic") {
  const BundledNS& ns = bundled_ns();
  CHECK(print_theory(compile_protocol(ns.spec)) == print_theory(ns.theory));
}

TEST_CASE("bundled key-knowledge claims verify") {
  const BundledNS& ns = bundled_ns();
  for (const char* name : {"A_knows_Kab", "B_knows_Kab"}) {
    const Claim* c = nullptr;
    for (const auto& cl : ns.claims)
      if (cl.name == name) c = &cl;
    REQUIRE(c);
    REQUIRE(c->script);
    VerifyReport rep = verify_claim(ns.theory, c->formula, c->script);
    CAPTURE(name);
    CAPTURE(rep.error);
    CHECK(rep.ok);
    CHECK(rep.assumptions.count("honesty-right") == 1);
    CHECK(rep.assumptions.count("pdtruth") == 1);
    CHECK(rep.assumptions.count("lax-necessitation") == 1);
  }
}

TEST_CASE("mutual knowledge claim has no bundled proof") {
  const BundledNS& ns = bundled_ns();
  const Claim* c = nullptr;
  for (const auto& cl : ns.claims)
    if (cl.name == "A_knows_B_knows_Kab") c = &cl;
  REQUIRE(c);
  CHECK(c->script == nullptr);
}

TEST_CASE("verify without a proof searches") {
  Theory empty;
  VerifyReport taut = verify_claim(empty, parse_formula("p -> p"), nullptr, 2);
  CHECK(taut.ok);
  CHECK(taut.searched);

  VerifyReport bot = verify_claim(empty, mk_bottom(), nullptr, 2);
  CHECK_FALSE(bot.ok);
  CHECK(bot.search_exhausted);
}
