#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delp/bisim.hpp"
#include "delp/gen.hpp"
#include "delp/parse.hpp"

using namespace delp;

namespace {

KripkeModel tiny() {
  KripkeModel m;
  m.worlds = {"w"};
  m.agents = {"A"};
  m.epist["A"] = {{"w", "w"}};
  m.exp["w"] = KnowledgeSet();
  return m;
}

}  // namespace

TEST_CASE("validate_model") {
  CHECK(validate_model(tiny()).empty());

  KripkeModel bad = tiny();
  bad.epist["A"].clear();
  auto diags = validate_model(bad);
  REQUIRE_FALSE(diags.empty());
  CHECK(diags[0].find("reflexive") != std::string::npos);

  KripkeModel bad2 = tiny();
  bad2.worlds.push_back("v");
  bad2.epist["A"].insert({"v", "v"});
  bad2.exp["v"] = KnowledgeSet();
  bad2.val_progs[ProgAtom{true, "A"}] = {{"w", "v"}};
  auto diags2 = validate_model(bad2);
  REQUIRE_FALSE(diags2.empty());
  CHECK(diags2[0].find("V(send_A)") != std::string::npos);
}

TEST_CASE("satisfies basics") {
  KripkeModel m = tiny();
  Msg t = mk_text("t"), k = mk_text("k");
  m.exp["w"] = KnowledgeSet({mk_enc(t, k), k});
  CHECK(satisfies(m, "w", parse_formula("@t")));
  CHECK_FALSE(satisfies(m, "w", parse_formula("@t"), EvalOpts{2, true}));  // raw
  CHECK(satisfies(m, "w", parse_formula("p -> p")));
  CHECK_FALSE(satisfies(m, "w", parse_formula("p")));  // unknown atom is false
  CHECK_THROWS_AS(satisfies(m, "nope", parse_formula("p")), std::out_of_range);
}

TEST_CASE("satisfies over programs and knowledge") {
  KripkeModel m;
  m.worlds = {"s", "t"};
  m.agents = {"A"};
  m.epist["A"] = {{"s", "s"}, {"t", "t"}, {"s", "t"}, {"t", "s"}};
  m.val_progs[ProgAtom{true, "A"}] = {{"s", "t"}};
  m.exp["s"] = KnowledgeSet({mk_text("m")});
  m.exp["t"] = KnowledgeSet({mk_text("x")});
  REQUIRE(validate_model(m).empty());
  CHECK_FALSE(satisfies(m, "s", parse_formula("[send A]@m")));
  CHECK_FALSE(satisfies(m, "s", parse_formula("K A @m")));
  CHECK(satisfies(m, "s", parse_formula("[send A]@x")));
}

TEST_CASE("program composition properties") {
  Gen g(41);
  Gen::FormulaOpts fo;
  fo.max_modal_depth = 1;
  fo.size = 3;
  for (int i = 0; i < 40; ++i) {
    KripkeModel m = g.model();
    std::vector<AtomId> atoms;
    for (const auto& [a, ws] : m.val_atoms) atoms.push_back(a);
    std::vector<Msg> msgs;
    for (const auto& [w, ks] : m.exp)
      for (const auto& msg : ks) msgs.push_back(msg);
    Formula f = g.formula(atoms, m.agents, msgs, fo);
    Program a = g.program(m.agents, 1, false);
    Program b = g.program(m.agents, 1, false);
    for (const auto& w : m.worlds) {
      CHECK(satisfies(m, w, mk_box(mk_union(a, b), f)) ==
            (satisfies(m, w, mk_box(a, f)) && satisfies(m, w, mk_box(b, f))));
      CHECK(satisfies(m, w, mk_box(mk_seq(a, b), f)) ==
            satisfies(m, w, mk_box(a, mk_box(b, f))));
      if (satisfies(m, w, mk_know(m.agents[0], f)))
        CHECK(satisfies(m, w, f));  // reflexivity of ~
    }
  }
}

TEST_CASE("restrict_model") {
  KripkeModel m = tiny();
  Msg m1 = mk_text("m1"), m2 = mk_text("m2");
  m.exp["w"] = KnowledgeSet({m1, m2});
  KripkeModel r = restrict_model(m, m1);
  CHECK(r.worlds.size() == 1);
  CHECK(r.exp_of("w") == KnowledgeSet({m2}));
  CHECK(validate_model(r).empty());

  m.exp["w"] = KnowledgeSet({m1});
  std::vector<std::string> warn;
  KripkeModel r2 = restrict_model(m, m1, &warn);
  CHECK(r2.worlds.empty());
  CHECK_FALSE(warn.empty());

  m.exp["w"] = KnowledgeSet({m2});
  KripkeModel r3 = restrict_model(m, m1);
  CHECK(print_model(r3) == print_model(m));  // untouched
}

TEST_CASE("temporal expansion shape") {
  KripkeModel m = tiny();
  TemporalModel n = temporal_expand(m);
  REQUIRE(n.histories.size() == 1);
  CHECK(!n.histories[0].payload.has_value());
  CHECK(n.step.empty());

  Msg a = mk_text("a"), b = mk_text("b");
  m.exp["w"] = KnowledgeSet({mk_pair(a, b), a});
  TemporalModel n2 = temporal_expand(m);
  CHECK(n2.histories.size() == 3);
  int pair_h = n2.index_of(History{"w", mk_pair(a, b)});
  int a_h = n2.index_of(History{"w", a});
  REQUIRE(pair_h >= 0);
  REQUIRE(a_h >= 0);
  CHECK(n2.step.count({pair_h, a_h}) == 1);   // unpairing step
  CHECK(n2.step.count({a_h, pair_h}) == 0);
}

TEST_CASE("temporal epist needs related worlds and equal payloads") {
  KripkeModel m;
  m.worlds = {"s", "t"};
  m.agents = {"A"};
  m.epist["A"] = {{"s", "s"}, {"t", "t"}, {"s", "t"}, {"t", "s"}};
  Msg x = mk_text("x");
  m.exp["s"] = KnowledgeSet({x, mk_text("y")});
  m.exp["t"] = KnowledgeSet({x});
  TemporalModel n = temporal_expand(m);
  int sx = n.index_of(History{"s", x});
  int tx = n.index_of(History{"t", x});
  int sy = n.index_of(History{"s", mk_text("y")});
  CHECK(n.epist.at("A").count({sx, tx}) == 1);
  CHECK(n.epist.at("A").count({sy, tx}) == 0);
}

TEST_CASE("bisimilarity") {
  Gen g(43);
  KripkeModel m = g.model();
  CHECK(bisimilar(m, m.worlds[0], m, m.worlds[0]));

  KripkeModel d = duplicate_worlds(m);
  REQUIRE(validate_model(d).empty());
  CHECK(bisimilar(m, m.worlds[0], d, m.worlds[0] + "d"));

  KripkeModel other = m;
  other.exp[other.worlds[0]].insert(mk_text("fresh_secret"));
  CHECK_FALSE(bisimilar(m, m.worlds[0], other, other.worlds[0]));
}

TEST_CASE("bridge holds on fixed models") {
  KripkeModel m = tiny();
  m.exp["w"] = KnowledgeSet({mk_text("m")});
  for (const char* s : {"@m", "p -> p", "K A @m", "[send A]p", "!@nope"})
    CHECK(check_bridge(m, "w", parse_formula(s)));
}
