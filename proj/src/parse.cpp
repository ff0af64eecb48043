#include "delp/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace delp {

namespace {

struct Tok {
  enum Type { Ident, Sym, End } type = End;
  std::string text;
  int line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s, int start_line = 1)
      : s_(s), line_(start_line) {
    advance();
  }

  const Tok& peek() const { return tok_; }

  Tok next() {
    Tok t = tok_;
    advance();
    return t;
  }

  bool accept(const std::string& text) {
    if (tok_.type != Tok::End && tok_.text == text) {
      advance();
      return true;
    }
    return false;
  }

  Tok expect(const std::string& text) {
    if (tok_.type == Tok::End || tok_.text != text)
      fail("expected '" + text + "'");
    return next();
  }

  Tok expect_ident(const std::string& what) {
    if (tok_.type != Tok::Ident) fail("expected " + what);
    return next();
  }

  void expect_end() {
    if (tok_.type != Tok::End) fail("expected end of input");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = tok_.type == Tok::End ? "end of input" : "'" + tok_.text + "'";
    throw ParseError(msg + ", got " + got, tok_.line, tok_.col);
  }

 private:
  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_ = Tok{Tok::End, "", line_, col_};
    if (pos_ >= s_.size()) return;

    int tl = line_, tc = col_;
    char c = s_[pos_];
    auto sym = [&](const std::string& t) {
      tok_ = Tok{Tok::Sym, t, tl, tc};
      pos_ += t.size();
      col_ += static_cast<int>(t.size());
    };

    if (std::isalnum(static_cast<unsigned char>(c)) || c == '?' || c == '_') {
      std::size_t start = pos_;
      // '-' joins identifier parts (schema names like honesty-right) but
      // never swallows the '->' arrow
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_' || (pos_ == start && s_[pos_] == '?') ||
              (s_[pos_] == '-' && pos_ > start && pos_ + 1 < s_.size() &&
               std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))))
        ++pos_;
      // a '?' may only lead
      if (s_[start] == '?' && pos_ == start + 1)
        throw ParseError("dangling '?'", tl, tc);
      tok_ = Tok{Tok::Ident, s_.substr(start, pos_ - start), tl, tc};
      col_ += static_cast<int>(pos_ - start);
      return;
    }
    if (s_.compare(pos_, 2, "->") == 0) return sym("->");
    if (s_.compare(pos_, 2, "/\\") == 0) return sym("/\\");
    if (s_.compare(pos_, 2, "\\/") == 0) return sym("\\/");
    static const std::string singles = "(){}[],;+*@|!:";
    if (singles.find(c) != std::string::npos) return sym(std::string(1, c));
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Tok tok_;
};

bool is_msg_keyword(const std::string& t) {
  return t == "key" || t == "nonce" || t == "agent" || t == "text";
}

Msg parse_msg(Lexer& lx) {
  const Tok& t = lx.peek();
  if (t.type == Tok::Sym && t.text == "(") {
    lx.next();
    Msg l = parse_msg(lx);
    lx.expect(",");
    Msg r = parse_msg(lx);
    lx.expect(")");
    return mk_pair(l, r);
  }
  if (t.type == Tok::Sym && t.text == "{") {
    lx.next();
    Msg body = parse_msg(lx);
    lx.expect("}");
    Msg key = parse_msg(lx);
    return mk_enc(body, key);
  }
  if (t.type != Tok::Ident) lx.fail("expected a message");
  if (t.text == "key") {
    lx.next();
    std::string label = lx.expect_ident("key label").text;
    lx.expect("(");
    std::string i = lx.expect_ident("agent").text;
    lx.expect(",");
    std::string j = lx.expect_ident("agent").text;
    lx.expect(")");
    return mk_key(label, i, j);
  }
  if (t.text == "nonce") {
    lx.next();
    lx.expect("(");
    Msg body = parse_msg(lx);
    lx.expect(")");
    return mk_nonce(body);
  }
  if (t.text == "agent") {
    lx.next();
    return mk_agent(lx.expect_ident("agent name").text);
  }
  if (t.text == "text") {
    lx.next();
    return mk_text(lx.expect_ident("text label").text);
  }
  std::string id = lx.next().text;
  if (lx.peek().type == Tok::Sym && lx.peek().text == "(") {
    lx.next();
    std::vector<Msg> args{parse_msg(lx)};
    while (lx.accept(",")) args.push_back(parse_msg(lx));
    lx.expect(")");
    return mk_func(id, std::move(args));
  }
  return mk_text(id);
}

Program parse_prog(Lexer& lx);

Program parse_prog_prim(Lexer& lx) {
  const Tok& t = lx.peek();
  if (t.type == Tok::Sym && t.text == "(") {
    lx.next();
    Program p = parse_prog(lx);
    lx.expect(")");
    return p;
  }
  if (t.type != Tok::Ident) lx.fail("expected a program");
  if (t.text == "skip") {
    lx.next();
    return mk_skip();
  }
  if (t.text == "send") {
    lx.next();
    return mk_send(lx.expect_ident("agent").text);
  }
  if (t.text == "recv") {
    lx.next();
    return mk_recv(lx.expect_ident("agent").text);
  }
  if (t.text[0] == '?') {
    // program metavariable placeholder (resolved by substitute)
    return mk_send(lx.next().text);
  }
  lx.fail("expected a program");
}

Program parse_prog_post(Lexer& lx) {
  Program p = parse_prog_prim(lx);
  while (lx.peek().type == Tok::Sym && lx.peek().text == "*") {
    lx.next();
    p = mk_star(p);
  }
  return p;
}

Program parse_prog_seq(Lexer& lx) {
  Program p = parse_prog_post(lx);
  if (lx.accept(";")) return mk_seq(p, parse_prog_seq(lx));
  return p;
}

Program parse_prog(Lexer& lx) {
  Program p = parse_prog_seq(lx);
  if (lx.accept("+")) return mk_union(p, parse_prog(lx));
  return p;
}

Formula parse_form(Lexer& lx);

Formula parse_form_unary(Lexer& lx) {
  const Tok& t = lx.peek();
  if (t.type == Tok::Sym) {
    if (t.text == "!") {
      lx.next();
      return mk_not(parse_form_unary(lx));
    }
    if (t.text == "@") {
      lx.next();
      return mk_at(parse_msg(lx));
    }
    if (t.text == "[") {
      lx.next();
      Program p = parse_prog(lx);
      lx.expect("]");
      return mk_box(p, parse_form_unary(lx));
    }
    if (t.text == "(") {
      lx.next();
      Formula f = parse_form(lx);
      lx.expect(")");
      return f;
    }
    lx.fail("expected a formula");
  }
  if (t.type != Tok::Ident) lx.fail("expected a formula");
  if (t.text == "false") {
    lx.next();
    return mk_bottom();
  }
  if (t.text == "K") {
    lx.next();
    std::string agent = lx.expect_ident("agent").text;
    return mk_know(agent, parse_form_unary(lx));
  }
  return mk_atom(lx.next().text);
}

Formula parse_form_and(Lexer& lx) {
  Formula f = parse_form_unary(lx);
  if (lx.accept("/\\")) return mk_and(f, parse_form_and(lx));
  return f;
}

Formula parse_form_or(Lexer& lx) {
  Formula f = parse_form_and(lx);
  if (lx.accept("\\/")) return mk_or(f, parse_form_or(lx));
  return f;
}

Formula parse_form(Lexer& lx) {
  Formula f = parse_form_or(lx);
  if (lx.accept("->")) return mk_impl(f, parse_form(lx));
  return f;
}

// Splits text into trimmed (line_number, content) pairs with comments and
// blanks removed; remembers original indentation.
struct Line {
  int no;
  bool indented;
  std::string text;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string raw;
  int no = 0;
  while (std::getline(is, raw)) {
    ++no;
    std::string line = raw.substr(0, raw.find('#'));
    bool indented = !line.empty() && std::isspace(static_cast<unsigned char>(line[0]));
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back({no, indented, line.substr(b, e - b + 1)});
  }
  return out;
}

}  // namespace

Msg parse_message(const std::string& text) {
  Lexer lx(text);
  Msg m = parse_msg(lx);
  lx.expect_end();
  return m;
}

Formula parse_formula(const std::string& text) {
  Lexer lx(text);
  Formula f = parse_form(lx);
  lx.expect_end();
  return f;
}

Program parse_program(const std::string& text) {
  Lexer lx(text);
  Program p = parse_prog(lx);
  lx.expect_end();
  return p;
}

Theory parse_theory(const std::string& text, const std::string& name) {
  Theory t;
  t.name = name;
  for (const auto& line : split_lines(text)) {
    Lexer lx(line.text, line.no);
    std::string axname = lx.expect_ident("axiom name").text;
    lx.expect(":");
    Formula f = parse_form(lx);
    lx.expect_end();
    for (const auto& [n, g] : t.axioms)
      if (n == axname)
        throw ParseError("duplicate axiom name '" + axname + "'", line.no, 1);
    t.axioms.emplace_back(axname, f);
  }
  return t;
}

KripkeModel parse_model(const std::string& text) {
  KripkeModel m;
  bool in_atoms = false;
  auto lines = split_lines(text);
  for (const auto& line : lines) {
    Lexer lx(line.text, line.no);
    std::string head = lx.peek().text;
    bool is_section = head == "worlds" || head == "agents" || head == "atoms" ||
                      head == "epist" || head == "prog" || head == "exp";
    if (in_atoms && (!is_section || line.indented)) {
      std::string atom = lx.expect_ident("atom name").text;
      lx.expect(":");
      std::set<World> ws;
      while (lx.peek().type == Tok::Ident) {
        World w = lx.next().text;
        if (!m.has_world(w))
          throw ParseError("atom '" + atom + "' at unknown world '" + w + "'",
                           line.no, 1);
        ws.insert(w);
      }
      lx.expect_end();
      m.val_atoms[atom] = ws;
      continue;
    }
    in_atoms = false;
    lx.next();
    if (head == "worlds") {
      lx.expect(":");
      while (lx.peek().type == Tok::Ident) m.worlds.push_back(lx.next().text);
      lx.expect_end();
    } else if (head == "agents") {
      lx.expect(":");
      while (lx.peek().type == Tok::Ident) m.agents.push_back(lx.next().text);
      lx.expect_end();
    } else if (head == "atoms") {
      lx.expect(":");
      lx.expect_end();
      in_atoms = true;
    } else if (head == "epist") {
      std::string agent = lx.expect_ident("agent").text;
      lx.expect(":");
      std::vector<std::vector<World>> blocks(1);
      while (lx.peek().type != Tok::End) {
        if (lx.accept("|")) {
          blocks.emplace_back();
          continue;
        }
        blocks.back().push_back(lx.expect_ident("world").text);
      }
      // partition blocks induce the equivalence; leftovers are singletons
      std::set<World> seen;
      Rel rel;
      for (const auto& blk : blocks)
        for (const auto& a : blk) {
          if (!m.has_world(a))
            throw ParseError("epist " + agent + ": unknown world '" + a + "'",
                             line.no, 1);
          if (!seen.insert(a).second)
            throw ParseError("epist " + agent + ": world '" + a +
                                 "' occurs in two blocks (not an equivalence)",
                             line.no, 1);
        }
      for (const auto& blk : blocks)
        for (const auto& a : blk)
          for (const auto& b : blk) rel.insert({a, b});
      for (const auto& w : m.worlds)
        if (!seen.count(w)) rel.insert({w, w});
      m.epist[agent] = rel;
    } else if (head == "prog") {
      std::string kind = lx.expect_ident("send or recv").text;
      if (kind != "send" && kind != "recv")
        throw ParseError("expected 'send' or 'recv'", line.no, 1);
      std::string agent = lx.expect_ident("agent").text;
      lx.expect(":");
      Rel rel;
      while (lx.peek().type == Tok::Ident) {
        World a = lx.next().text;
        lx.expect("->");
        World b = lx.expect_ident("world").text;
        if (!m.has_world(a) || !m.has_world(b))
          throw ParseError("prog " + kind + " " + agent + ": unknown world",
                           line.no, 1);
        rel.insert({a, b});
      }
      lx.expect_end();
      m.val_progs[{kind == "send", agent}] = rel;
    } else if (head == "exp") {
      World w = lx.expect_ident("world").text;
      if (!m.has_world(w))
        throw ParseError("exp for unknown world '" + w + "'", line.no, 1);
      lx.expect(":");
      KnowledgeSet ks;
      if (lx.peek().type != Tok::End) {
        ks.insert(parse_msg(lx));
        while (lx.accept(",")) ks.insert(parse_msg(lx));
      }
      lx.expect_end();
      m.exp[w] = ks;
    } else {
      throw ParseError("unknown section '" + head + "'", line.no, 1);
    }
  }
  return m;
}

ProtocolSpec parse_protocol(const std::string& text) {
  ProtocolSpec spec;
  for (const auto& line : split_lines(text)) {
    Lexer lx(line.text, line.no);
    std::string head = lx.expect_ident("directive").text;
    if (head == "protocol") {
      spec.name = lx.expect_ident("protocol name").text;
      lx.expect_end();
    } else if (head == "agents") {
      lx.expect(":");
      while (lx.peek().type == Tok::Ident) spec.agents.push_back(lx.next().text);
      lx.expect_end();
    } else if (head == "knows") {
      std::string agent = lx.expect_ident("agent").text;
      lx.expect(":");
      std::vector<Msg>& ms = spec.initial_knowledge[agent];
      ms.push_back(parse_msg(lx));
      while (lx.accept(",")) ms.push_back(parse_msg(lx));
      lx.expect_end();
    } else if (head == "round") {
      lx.expect_ident("round number");
      lx.expect(":");
      Round r;
      r.sender = lx.expect_ident("sender").text;
      lx.expect("->");
      r.receiver = lx.expect_ident("receiver").text;
      lx.expect(":");
      r.payload.push_back(parse_msg(lx));
      while (lx.accept(",")) r.payload.push_back(parse_msg(lx));
      if (lx.accept("[")) {
        std::string flag = lx.expect_ident("flag").text;
        if (flag != "unformalized")
          throw ParseError("unknown round flag '" + flag + "'", line.no, 1);
        lx.expect("]");
        r.unformalized = true;
      }
      lx.expect_end();
      spec.rounds.push_back(std::move(r));
    } else {
      throw ParseError("unknown directive '" + head + "'", line.no, 1);
    }
  }
  return spec;
}

namespace {

Proof parse_proof_tree(Lexer& lx) {
  lx.expect("(");
  std::string head = lx.expect_ident("proof node head").text;
  Proof out;
  if (head == "hyp") {
    out = p_hyp(lx.expect_ident("hypothesis name").text);
  } else if (head == "ax") {
    std::string schema = lx.expect_ident("schema name").text;
    const AxiomSchema* sch = find_schema(schema);
    if (!sch)
      lx.fail("unknown schema '" + schema + "'");
    Bindings b;
    while (lx.peek().type == Tok::Sym && lx.peek().text == "(") {
      lx.next();
      std::string mv = lx.expect_ident("metavariable").text;
      Sort sort = Sort::FormulaS;
      bool found = false;
      for (const auto& [n, s] : sch->sig)
        if (n == mv) {
          sort = s;
          found = true;
        }
      if (!found) lx.fail("schema '" + schema + "' has no metavariable '" + mv + "'");
      Binding bind;
      bind.sort = sort;
      switch (sort) {
        case Sort::FormulaS: bind.f = parse_form(lx); break;
        case Sort::MessageS: bind.m = parse_msg(lx); break;
        case Sort::ProgramS: bind.p = parse_prog(lx); break;
        case Sort::AgentS:
        case Sort::KeyLabelS: bind.id = lx.expect_ident("identifier").text; break;
      }
      lx.expect(")");
      b[mv] = bind;
    }
    out = p_ax(schema, std::move(b));
  } else if (head == "mp") {
    Proof a = parse_proof_tree(lx);
    Proof b = parse_proof_tree(lx);
    out = p_mp(a, b);
  } else if (head == "kgen") {
    std::string agent = lx.expect_ident("agent").text;
    out = p_kgen(agent, parse_proof_tree(lx));
  } else if (head == "pgen") {
    Program p = parse_prog(lx);
    out = p_pgen(p, parse_proof_tree(lx));
  } else if (head == "andi") {
    Proof a = parse_proof_tree(lx);
    Proof b = parse_proof_tree(lx);
    out = p_andi(a, b);
  } else if (head == "andl") {
    out = p_andl(parse_proof_tree(lx));
  } else if (head == "andr") {
    out = p_andr(parse_proof_tree(lx));
  } else {
    lx.fail("unknown proof node '" + head + "'");
  }
  lx.expect(")");
  return out;
}

}  // namespace

ProofFile parse_proof_file(const std::string& text) {
  ProofFile pf;
  std::ostringstream tree;
  bool have_goal = false;
  std::istringstream is(text);
  std::string raw;
  int no = 0;
  int tree_start = 1;
  bool in_tree = false;
  while (std::getline(is, raw)) {
    ++no;
    std::string line = raw.substr(0, raw.find('#'));
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (!in_tree && line.compare(b, 4, "ctx:") == 0) {
      Lexer lx(line, no);
      lx.expect_ident("ctx");
      lx.expect(":");
      while (lx.peek().type == Tok::Ident) pf.ctx.push_back(lx.next().text);
      lx.expect_end();
    } else if (!in_tree && line.compare(b, 5, "goal:") == 0) {
      Lexer lx(line, no);
      lx.expect_ident("goal");
      lx.expect(":");
      pf.goal = parse_form(lx);
      lx.expect_end();
      have_goal = true;
    } else {
      if (!in_tree) tree_start = no;
      in_tree = true;
      tree << line << "\n";
    }
  }
  if (!have_goal) throw ParseError("missing 'goal:' header", no, 1);
  std::string tree_text = tree.str();
  Lexer lx(tree_text, tree_start);
  pf.root = parse_proof_tree(lx);
  lx.expect_end();
  return pf;
}

std::string print_proof_file(const ProofFile& pf) {
  std::ostringstream os;
  os << "ctx:";
  for (const auto& n : pf.ctx) os << " " << n;
  os << "\ngoal: " << formula_to_string(pf.goal) << "\n";
  os << proof_to_string(pf.root) << "\n";
  return os.str();
}

Judgment resolve_judgment(const Theory& t, const ProofFile& pf) {
  Judgment j;
  for (const auto& name : pf.ctx) {
    const Formula* f = t.find(name);
    if (!f) throw ParseError("theory has no axiom '" + name + "'", 0, 0);
    j.context.emplace_back(name, *f);
  }
  j.goal = pf.goal;
  return j;
}

bool proof_eq(const Proof& a, const Proof& b) {
  if (a->kind != b->kind || a->name != b->name || a->agent != b->agent)
    return false;
  if ((a->prog == nullptr) != (b->prog == nullptr)) return false;
  if (a->prog && !prog_eq(a->prog, b->prog)) return false;
  if (a->binds.size() != b->binds.size()) return false;
  for (auto it = a->binds.begin(), jt = b->binds.begin(); it != a->binds.end();
       ++it, ++jt) {
    if (it->first != jt->first || it->second.sort != jt->second.sort) return false;
    const Binding &x = it->second, &y = jt->second;
    switch (x.sort) {
      case Sort::FormulaS:
        if (!formula_eq(x.f, y.f)) return false;
        break;
      case Sort::MessageS:
        if (!msg_eq(x.m, y.m)) return false;
        break;
      case Sort::ProgramS:
        if (!prog_eq(x.p, y.p)) return false;
        break;
      default:
        if (x.id != y.id) return false;
    }
  }
  if (a->kids.size() != b->kids.size()) return false;
  for (std::size_t n = 0; n < a->kids.size(); ++n)
    if (!proof_eq(a->kids[n], b->kids[n])) return false;
  return true;
}

}  // namespace delp
