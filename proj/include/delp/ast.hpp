#ifndef DELP_AST_HPP
#define DELP_AST_HPP

#include <memory>
#include <string>
#include <vector>

#include "delp/message.hpp"

namespace delp {

using AtomId = std::string;

// Protocol-action programs: atomic send/recv plus the regular operators.
struct ProgramNode;
using Program = std::shared_ptr<const ProgramNode>;

enum class ProgKind { Skip, Send, Recv, Seq, Union, Star };

struct ProgramNode {
  ProgKind kind;
  AgentId agent;                 // Send / Recv
  std::vector<Program> kids;     // Seq / Union: 2, Star: 1
};

Program mk_skip();
Program mk_send(AgentId i);
Program mk_recv(AgentId i);
Program mk_seq(Program a, Program b);
Program mk_union(Program a, Program b);
Program mk_star(Program a);

int prog_cmp(const Program& a, const Program& b);
bool prog_eq(const Program& a, const Program& b);
std::string prog_to_string(const Program& p);

// DELP formulas. Negation is surface sugar for `phi -> false`; there is no
// Not node.
struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

enum class FKind { Atom, Bottom, Impl, And, Or, Know, Box, At };

struct FormulaNode {
  FKind kind;
  AtomId atom;                   // Atom
  AgentId agent;                 // Know
  Program prog;                  // Box
  Msg msg;                       // At
  std::vector<Formula> kids;     // Impl/And/Or: 2, Know/Box: 1
};

Formula mk_atom(AtomId p);
Formula mk_bottom();
Formula mk_impl(Formula a, Formula b);
Formula mk_not(Formula a);       // sugar: a -> false
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_know(AgentId i, Formula a);
Formula mk_box(Program p, Formula a);
Formula mk_at(Msg m);

int formula_cmp(const Formula& a, const Formula& b);
bool formula_eq(const Formula& a, const Formula& b);

// Structural equality after normalizing every embedded message.
Formula formula_norm(const Formula& f);
bool formula_eq_norm(const Formula& a, const Formula& b);

struct FormulaLess {
  bool operator()(const Formula& a, const Formula& b) const {
    return formula_cmp(a, b) < 0;
  }
};

// Nesting depth of Know/Box operators.
int modal_depth(const Formula& f);

std::string formula_to_string(const Formula& f);

// A sequent: named hypotheses plus a goal.
struct Judgment {
  std::vector<std::pair<std::string, Formula>> context;
  Formula goal;

  bool in_context(const Formula& f) const;
};

}  // namespace delp

#endif
