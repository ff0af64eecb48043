#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delp/ban.hpp"
#include "delp/gen.hpp"
#include "delp/parse.hpp"
#include "delp/search.hpp"

using namespace delp;

TEST_CASE("modus ponens") {
  Judgment j;
  j.context.emplace_back("h1", parse_formula("p"));
  j.context.emplace_back("h2", parse_formula("p -> q"));
  j.goal = parse_formula("q");
  CheckResult r = check_proof(j, p_mp(p_hyp("h2"), p_hyp("h1")), {});
  CHECK(r.ok);
  CHECK(formula_eq(r.conclusion, j.goal));

  CheckResult bad = check_proof(j, p_mp(p_hyp("h1"), p_hyp("h2")), {});
  CHECK_FALSE(bad.ok);
  CHECK(bad.at == "root");
}

TEST_CASE("hypothesis must be in context") {
  Judgment j;
  j.context.emplace_back("h", parse_formula("p"));
  j.goal = parse_formula("p");
  CHECK(check_proof(j, p_hyp("h"), {}).ok);
  CheckResult r = check_proof(j, p_hyp("nope"), {});
  CHECK_FALSE(r.ok);
  CHECK(r.error.find("nope") != std::string::npos);
}

TEST_CASE("prop-taut nodes decide the skeleton") {
  CHECK(prop_tautology(parse_formula("p -> p")));
  CHECK(prop_tautology(parse_formula("K A p \\/ !K A p")));
  CHECK_FALSE(prop_tautology(parse_formula("p -> q")));
  std::string err;
  Formula wide = parse_formula("p1");
  for (int i = 2; i <= 18; ++i)
    wide = mk_and(wide, parse_formula("p" + std::to_string(i)));
  CHECK_FALSE(prop_tautology(mk_impl(wide, wide), &err));
  CHECK(err.find("16") != std::string::npos);
}

TEST_CASE("substitute instantiates schemas") {
  const AxiomSchema* kdist = find_schema("kdist");
  REQUIRE(kdist);
  Bindings b;
  b["?a"] = Binding{Sort::AgentS, nullptr, nullptr, nullptr, "A"};
  b["?p"] = Binding{Sort::FormulaS, parse_formula("p"), nullptr, nullptr, ""};
  b["?q"] = Binding{Sort::FormulaS, parse_formula("q"), nullptr, nullptr, ""};
  CHECK(formula_eq(substitute(kdist->tmpl, b),
                   parse_formula("K A (p -> q) -> (K A p -> K A q)")));

  b.erase("?q");
  CHECK_THROWS_AS(substitute(kdist->tmpl, b), SubstError);
  b["?q"] = Binding{Sort::MessageS, nullptr, mk_text("m"), nullptr, ""};
  CHECK_THROWS_AS(substitute(kdist->tmpl, b), SubstError);
}

TEST_CASE("strict vs lax necessitation") {
  Judgment j;
  j.context.emplace_back("h", parse_formula("p"));
  j.goal = parse_formula("K A p");
  Proof pr = p_kgen("A", p_hyp("h"));
  CHECK_FALSE(check_proof(j, pr, CheckOptions{false}).ok);
  CheckResult lax = check_proof(j, pr, CheckOptions{true});
  CHECK(lax.ok);
  CHECK(lax.used_lax);
}

TEST_CASE("derived rule scripts check") {
  for (const auto& [name, script] : derived_rule_scripts()) {
    CAPTURE(name);
    CheckResult r =
        check_proof(script.judgment, script.proof, CheckOptions{script.needs_lax});
    CHECK(r.ok);
    if (!script.needs_lax)
      CHECK(check_proof(script.judgment, script.proof, CheckOptions{false}).ok);
  }
}

TEST_CASE("deleting the MMSK generalization breaks the proof") {
  const Script& mmsk = derived_rule_scripts().at("MMSK");
  REQUIRE(mmsk.proof->kind == PKind::KGen);
  CheckResult r =
      check_proof(mmsk.judgment, mmsk.proof->kids[0], CheckOptions{true});
  CHECK_FALSE(r.ok);
  CHECK(r.at == "root");  // conclusion is not K-prefixed
}

TEST_CASE("mutations of derived scripts are rejected") {
  for (const auto& [name, script] : derived_rule_scripts()) {
    for (const auto& mut : mutate_proof(script.proof)) {
      CAPTURE(name);
      CAPTURE(proof_to_string(mut));
      CHECK_FALSE(check_proof(script.judgment, mut, CheckOptions{true}).ok);
    }
  }
}

TEST_CASE("ban translation") {
  Msg key = mk_key("k", "A", "B");
  CHECK(formula_eq(translate_ban(ban_believes("A", key)),
                   parse_formula("K A @key k(A,B)")));
  CHECK(formula_eq(translate_ban(ban_sees("A", mk_text("m"))),
                   parse_formula("[recv A]@m")));
  CHECK(formula_eq(translate_ban(ban_said("A", mk_text("m"))),
                   parse_formula("[send A]@m")));
  CHECK(formula_eq(translate_ban(ban_controls("S", mk_text("m"))),
                   parse_formula("K S @m -> @m")));
  CHECK(formula_eq(translate_ban(ban_fresh(mk_text("Na"))),
                   parse_formula("@nonce(Na)")));
  CHECK(formula_eq(translate_ban(ban_shared_key("A", "k", "B")),
                   parse_formula("@key k(A,B)")));
  // pairwise distinct on a shared payload
  std::set<std::string> images;
  for (auto b : {ban_believes("A", key), ban_sees("A", key), ban_said("A", key),
                 ban_controls("A", key)})
    images.insert(formula_to_string(translate_ban(b)));
  CHECK(images.size() == 4);
}

TEST_CASE("search finds small proofs") {
  Judgment j;
  j.context.emplace_back("h", parse_formula("K A p"));
  j.goal = parse_formula("p");
  auto pr = search_proof(j, 3);
  REQUIRE(pr.has_value());
  CHECK(check_proof(j, *pr, CheckOptions{false}).ok);

  Judgment empty;
  empty.goal = parse_formula("p");
  CHECK_FALSE(search_proof(empty, 3).has_value());

  Judgment taut;
  taut.goal = parse_formula("p -> p");
  auto tp = search_proof(taut, 1);
  REQUIRE(tp.has_value());
  CHECK(check_proof(taut, *tp, CheckOptions{false}).ok);
}
