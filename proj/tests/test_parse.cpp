#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "delp/gen.hpp"
#include "delp/parse.hpp"

using namespace delp;

TEST_CASE("message parsing") {
  Msg m = parse_message("{nonce(Na)}key Kab(A,B)");
  REQUIRE(m->kind == MsgKind::Enc);
  CHECK(m->kids[0]->kind == MsgKind::Nonce);
  CHECK(m->kids[1]->kind == MsgKind::Key);

  Msg p = parse_message("(agent A, Nb)");
  REQUIRE(p->kind == MsgKind::Pair);
  CHECK(p->kids[0]->kind == MsgKind::Agent);
  CHECK(p->kids[1]->kind == MsgKind::Text);  // bare identifier

  CHECK_THROWS_AS(parse_message("{m"), ParseError);
  CHECK_THROWS_AS(parse_message("key k(A)"), ParseError);
  CHECK_THROWS_AS(parse_message("t extra"), ParseError);
}

TEST_CASE("formula parsing") {
  Formula f = parse_formula("K A @key Kab(A,B)");
  REQUIRE(f->kind == FKind::Know);
  CHECK(f->agent == "A");
  CHECK(f->kids[0]->kind == FKind::At);

  Formula g = parse_formula("[send A][recv S]@nonce(Na)");
  REQUIRE(g->kind == FKind::Box);
  CHECK(g->prog->kind == ProgKind::Send);
  REQUIRE(g->kids[0]->kind == FKind::Box);
  CHECK(g->kids[0]->prog->kind == ProgKind::Recv);

  Formula h = parse_formula("p -> q -> r");
  REQUIRE(h->kind == FKind::Impl);
  CHECK(h->kids[1]->kind == FKind::Impl);  // right-associative

  Formula prec = parse_formula("p /\\ q \\/ r -> s");
  REQUIRE(prec->kind == FKind::Impl);
  CHECK(prec->kids[0]->kind == FKind::Or);
  CHECK(prec->kids[0]->kids[0]->kind == FKind::And);

  CHECK(formula_eq(parse_formula("!p"), mk_impl(mk_atom("p"), mk_bottom())));
  CHECK_THROWS_AS(parse_formula("K"), ParseError);
  CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
}

TEST_CASE("program parsing") {
  Program p = parse_program("(send A ; recv B)* + skip");
  REQUIRE(p->kind == ProgKind::Union);
  CHECK(p->kids[0]->kind == ProgKind::Star);
  CHECK(p->kids[1]->kind == ProgKind::Skip);
}

TEST_CASE("modal depth") {
  CHECK(modal_depth(parse_formula("p")) == 0);
  CHECK(modal_depth(parse_formula("K A [send A]p")) == 2);
  CHECK(modal_depth(parse_formula("K A p -> K B K A p")) == 2);
}

TEST_CASE("message and formula round-trips") {
  Gen g(23);
  auto pool = g.message_pool(8);
  for (int i = 0; i < 300; ++i) {
    Msg m = g.message_from(pool, 3);
    std::string s = msg_to_string(m);
    CHECK(msg_to_string(parse_message(s)) == s);
  }
  Gen::FormulaOpts fo;
  fo.allow_star = true;
  for (int i = 0; i < 300; ++i) {
    Formula f = g.formula({"p", "q", "r"}, {"A", "B"}, pool, fo);
    std::string s = formula_to_string(f);
    CHECK(formula_to_string(parse_formula(s)) == s);
  }
}

TEST_CASE("model round-trip") {
  Gen g(29);
  for (int i = 0; i < 50; ++i) {
    KripkeModel m = g.model();
    std::string s = print_model(m);
    CHECK(print_model(parse_model(s)) == s);
  }
}

TEST_CASE("model parser rejects broken epist blocks") {
  const char* text =
      "worlds: w0 w1\n"
      "agents: A\n"
      "epist A: w0 | w0 w1\n";
  CHECK_THROWS_AS(parse_model(text), ParseError);
}

TEST_CASE("theory files") {
  Theory t = parse_theory("# comment\nax1 : K A p\nax2 : p -> q\n", "demo");
  REQUIRE(t.axioms.size() == 2);
  CHECK(t.axioms[0].first == "ax1");
  CHECK(print_theory(t) == "ax1 : K A p\nax2 : p -> q\n");
}

TEST_CASE("protocol round-trip") {
  Gen g(31);
  for (int i = 0; i < 50; ++i) {
    ProtocolSpec spec = g.protocol();
    std::string s = print_protocol(spec);
    CHECK(print_protocol(parse_protocol(s)) == s);
  }
}

TEST_CASE("proof file round-trip") {
  Gen g(37);
  for (int i = 0; i < 50; ++i) {
    ProofFile pf = g.proof_file();
    std::string s = print_proof_file(pf);
    ProofFile back = parse_proof_file(s);
    CHECK(back.ctx == pf.ctx);
    CHECK(formula_eq(back.goal, pf.goal));
    CHECK(proof_eq(back.root, pf.root));
  }
}
