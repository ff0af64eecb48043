#include "delp/ast.hpp"

#include <algorithm>
#include <sstream>

namespace delp {

static Program mkp(ProgKind k, AgentId i, std::vector<Program> kids) {
  auto p = std::make_shared<ProgramNode>();
  p->kind = k;
  p->agent = std::move(i);
  p->kids = std::move(kids);
  return p;
}

Program mk_skip() { return mkp(ProgKind::Skip, "", {}); }
Program mk_send(AgentId i) { return mkp(ProgKind::Send, std::move(i), {}); }
Program mk_recv(AgentId i) { return mkp(ProgKind::Recv, std::move(i), {}); }
Program mk_seq(Program a, Program b) { return mkp(ProgKind::Seq, "", {std::move(a), std::move(b)}); }
Program mk_union(Program a, Program b) { return mkp(ProgKind::Union, "", {std::move(a), std::move(b)}); }
Program mk_star(Program a) { return mkp(ProgKind::Star, "", {std::move(a)}); }

int prog_cmp(const Program& a, const Program& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->agent.compare(b->agent)) return c;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t n = 0; n < a->kids.size(); ++n)
    if (int c = prog_cmp(a->kids[n], b->kids[n])) return c;
  return 0;
}

bool prog_eq(const Program& a, const Program& b) { return prog_cmp(a, b) == 0; }

// Precedence: star > seq > union.
static void prog_print(std::ostringstream& os, const Program& p, int parent) {
  int prec = 0;
  switch (p->kind) {
    case ProgKind::Skip:
    case ProgKind::Send:
    case ProgKind::Recv:
      prec = 3;
      break;
    case ProgKind::Star:
      prec = 2;
      break;
    case ProgKind::Seq:
      prec = 1;
      break;
    case ProgKind::Union:
      prec = 0;
      break;
  }
  bool paren = prec < parent;
  if (paren) os << "(";
  switch (p->kind) {
    case ProgKind::Skip: os << "skip"; break;
    case ProgKind::Send: os << "send " << p->agent; break;
    case ProgKind::Recv: os << "recv " << p->agent; break;
    case ProgKind::Star:
      prog_print(os, p->kids[0], 3);
      os << "*";
      break;
    case ProgKind::Seq:
      prog_print(os, p->kids[0], 2);
      os << " ; ";
      prog_print(os, p->kids[1], 1);
      break;
    case ProgKind::Union:
      prog_print(os, p->kids[0], 1);
      os << " + ";
      prog_print(os, p->kids[1], 0);
      break;
  }
  if (paren) os << ")";
}

std::string prog_to_string(const Program& p) {
  std::ostringstream os;
  prog_print(os, p, 0);
  return os.str();
}

Formula mk_atom(AtomId p) {
  auto f = std::make_shared<FormulaNode>();
  f->kind = FKind::Atom;
  f->atom = std::move(p);
  return f;
}

Formula mk_bottom() {
  auto f = std::make_shared<FormulaNode>();
  f->kind = FKind::Bottom;
  return f;
}

static Formula mk2(FKind k, Formula a, Formula b) {
  auto f = std::make_shared<FormulaNode>();
  f->kind = k;
  f->kids = {std::move(a), std::move(b)};
  return f;
}

Formula mk_impl(Formula a, Formula b) { return mk2(FKind::Impl, std::move(a), std::move(b)); }
Formula mk_not(Formula a) { return mk_impl(std::move(a), mk_bottom()); }
Formula mk_and(Formula a, Formula b) { return mk2(FKind::And, std::move(a), std::move(b)); }
Formula mk_or(Formula a, Formula b) { return mk2(FKind::Or, std::move(a), std::move(b)); }

Formula mk_know(AgentId i, Formula a) {
  auto f = std::make_shared<FormulaNode>();
  f->kind = FKind::Know;
  f->agent = std::move(i);
  f->kids = {std::move(a)};
  return f;
}

Formula mk_box(Program p, Formula a) {
  auto f = std::make_shared<FormulaNode>();
  f->kind = FKind::Box;
  f->prog = std::move(p);
  f->kids = {std::move(a)};
  return f;
}

Formula mk_at(Msg m) {
  auto f = std::make_shared<FormulaNode>();
  f->kind = FKind::At;
  f->msg = std::move(m);
  return f;
}

int formula_cmp(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->atom.compare(b->atom)) return c;
  if (int c = a->agent.compare(b->agent)) return c;
  if (a->prog || b->prog) {
    if (!a->prog || !b->prog) return a->prog ? 1 : -1;
    if (int c = prog_cmp(a->prog, b->prog)) return c;
  }
  if (a->msg || b->msg) {
    if (!a->msg || !b->msg) return a->msg ? 1 : -1;
    if (int c = msg_cmp(a->msg, b->msg)) return c;
  }
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t n = 0; n < a->kids.size(); ++n)
    if (int c = formula_cmp(a->kids[n], b->kids[n])) return c;
  return 0;
}

bool formula_eq(const Formula& a, const Formula& b) { return formula_cmp(a, b) == 0; }

Formula formula_norm(const Formula& f) {
  auto r = std::make_shared<FormulaNode>(*f);
  if (r->msg) r->msg = normalize(r->msg);
  for (auto& k : r->kids) k = formula_norm(k);
  return r;
}

bool formula_eq_norm(const Formula& a, const Formula& b) {
  return formula_eq(formula_norm(a), formula_norm(b));
}

int modal_depth(const Formula& f) {
  int d = 0;
  for (const auto& k : f->kids) d = std::max(d, modal_depth(k));
  if (f->kind == FKind::Know || f->kind == FKind::Box) ++d;
  return d;
}

// Precedence levels: -> is 1 (right associative), \/ is 2, /\ is 3,
// unary operators and atoms are 4.
static void form_print(std::ostringstream& os, const Formula& f, int parent) {
  int prec = 4;
  switch (f->kind) {
    case FKind::Impl: prec = 1; break;
    case FKind::Or: prec = 2; break;
    case FKind::And: prec = 3; break;
    default: break;
  }
  bool paren = prec < parent;
  if (paren) os << "(";
  switch (f->kind) {
    case FKind::Atom: os << f->atom; break;
    case FKind::Bottom: os << "false"; break;
    case FKind::Impl:
      form_print(os, f->kids[0], 2);
      os << " -> ";
      form_print(os, f->kids[1], 1);
      break;
    case FKind::Or:
      form_print(os, f->kids[0], 3);
      os << " \\/ ";
      form_print(os, f->kids[1], 2);
      break;
    case FKind::And:
      form_print(os, f->kids[0], 4);
      os << " /\\ ";
      form_print(os, f->kids[1], 3);
      break;
    case FKind::Know:
      os << "K " << f->agent << " ";
      form_print(os, f->kids[0], 4);
      break;
    case FKind::Box:
      os << "[" << prog_to_string(f->prog) << "]";
      form_print(os, f->kids[0], 4);
      break;
    case FKind::At:
      os << "@" << msg_to_string(f->msg);
      break;
  }
  if (paren) os << ")";
}

std::string formula_to_string(const Formula& f) {
  std::ostringstream os;
  form_print(os, f, 0);
  return os.str();
}

bool Judgment::in_context(const Formula& f) const {
  Formula n = formula_norm(f);
  for (const auto& [name, g] : context)
    if (formula_eq(n, formula_norm(g))) return true;
  return false;
}

}  // namespace delp
